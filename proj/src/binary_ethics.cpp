#include "ethics2vec/binary_ethics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ethics2vec/errors.hpp"
#include "ethics2vec/normal.hpp"

namespace e2v {

void LossMatrix::validate() const {
    if (!std::isfinite(l_fp) || !std::isfinite(l_fn) || !(l_fp > 0.0) || !(l_fn > 0.0))
        throw DomainError(Err::invalid_config, "error losses must be positive and finite");
}

double expected_loss(double tau, const BinormalFit& fit, const ClassPriors& priors,
                     const LossMatrix& losses) {
    fit.validate();
    priors.validate();
    losses.validate();
    return losses.l_fp * binormal_fpr(fit, tau) * priors.p_n +
           losses.l_fn * (1.0 - binormal_tpr(fit, tau)) * priors.p_p;
}

namespace {

// log slope(tau) - log c is an exact quadratic in tau for the binormal
// model; its sign equals the sign of the loss derivative, so the cost
// minimum sits at the root where the quadratic crosses from - to +.
struct SlopeGap {
    double a, b, c;

    double operator()(double tau) const { return (a * tau + b) * tau + c; }
    double deriv(double tau) const { return 2.0 * a * tau + b; }
};

SlopeGap slope_gap(const BinormalFit& fit, double log_c) {
    const double v0 = 1.0 / (fit.sigma0 * fit.sigma0);
    const double v1 = 1.0 / (fit.sigma1 * fit.sigma1);
    SlopeGap g;
    g.a = 0.5 * (v0 - v1);
    g.b = fit.mu1 * v1 - fit.mu0 * v0;
    g.c = 0.5 * (fit.mu0 * fit.mu0 * v0 - fit.mu1 * fit.mu1 * v1) +
          std::log(fit.sigma0 / fit.sigma1) - log_c;
    return g;
}

double bisect(const SlopeGap& g, double lo, double hi) {
    // invariant: g(lo) < 0 <= g(hi)
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

[[noreturn]] void throw_no_interior() {
    throw DomainError(Err::no_interior_optimum,
                      "no interior threshold beats a constant policy",
                      "one loss dominates so strongly that always answering the same way is optimal");
}

} // namespace

double optimal_threshold(const BinormalFit& fit, const ClassPriors& priors,
                         const LossMatrix& losses) {
    fit.validate();
    priors.validate();
    losses.validate();

    const double cost_target = (losses.l_fp * priors.p_n) / (losses.l_fn * priors.p_p);
    const SlopeGap g = slope_gap(fit, std::log(cost_target));

    double root;
    double other = 0.0;
    bool has_other = false;
    const double curv_scale =
        0.5 * (1.0 / (fit.sigma0 * fit.sigma0) + 1.0 / (fit.sigma1 * fit.sigma1));
    if (std::fabs(g.a) < 1e-14 * curv_scale) {
        // equal variances: the gap is linear and must be increasing
        if (!(g.b > 0.0)) throw_no_interior();
        root = -g.c / g.b;
    } else {
        const double disc = g.b * g.b - 4.0 * g.a * g.c;
        if (!(disc > 0.0)) throw_no_interior();
        const double s = (g.b >= 0.0) ? 1.0 : -1.0;
        const double q = -0.5 * (g.b + s * std::sqrt(disc));
        const double r1 = q / g.a;
        const double r2 = g.c / q;
        if (g.deriv(r1) > 0.0) {
            root = r1;
            other = r2;
        } else if (g.deriv(r2) > 0.0) {
            root = r2;
            other = r1;
        } else {
            throw_no_interior();
        }
        has_other = true;
    }

    // polish by bisection on the gap around the analytic root
    double lo, hi;
    if (has_other) {
        const double mid_toward_other = 0.5 * (root + other);
        if (root > other) {
            lo = mid_toward_other;
            hi = root + std::fabs(root - other);
        } else {
            lo = root - std::fabs(root - other);
            hi = mid_toward_other;
        }
    } else {
        const double d = std::max(1.0, 1e-3 * std::fabs(root));
        lo = root - d;
        hi = root + d;
    }
    if (g(lo) < 0.0 && g(hi) >= 0.0) root = bisect(g, lo, hi);

    if (!std::isfinite(root)) throw_no_interior();
    const double at_root = expected_loss(root, fit, priors, losses);
    const double constant_policy =
        std::min(losses.l_fp * priors.p_n, losses.l_fn * priors.p_p);
    if (!(at_root < constant_policy)) throw_no_interior();
    return root;
}

double recover_loss_ratio(double slope_at_tau_star, const ClassPriors& priors) {
    priors.validate();
    if (!std::isfinite(slope_at_tau_star) || !(slope_at_tau_star > 0.0))
        throw DomainError(Err::non_positive_slope, "ROC slope must be positive",
                          "a valid operating point always has a positive slope");
    return slope_at_tau_star * priors.p_p / priors.p_n;
}

EthicsVector2D ethics_vector_binary(const BinormalFit& fit, double tau_star) {
    const RocDerivatives d = parametric_derivatives(fit, tau_star);
    return EthicsVector2D{d.d_tpr_d_tau, d.d_fpr_d_tau, tau_star};
}

double infer_threshold(const DecisionLog& log, double tol_fraction) {
    log.validate();
    const std::size_t n = log.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return log.records[a].score < log.records[b].score;
    });

    std::size_t total1 = 0;
    for (const Record& r : log.records) total1 += r.action;

    // A cut at position k predicts action 0 for the k lowest scores and 1
    // for the rest. Tied scores must fall on the same side, so only group
    // boundaries are candidates. violations(k) = 2*pref1(k) + n - k - total1.
    const auto violations = [&](std::size_t k, std::size_t pref1) {
        return 2 * pref1 + n - k - total1;
    };

    std::size_t best_k = 0;
    std::size_t best_viol = violations(0, 0);
    std::size_t pref1 = 0;
    std::size_t k = 0;
    while (k < n) {
        std::size_t next = k;
        const double s = log.records[order[k]].score;
        while (next < n && log.records[order[next]].score == s) {
            pref1 += log.records[order[next]].action;
            ++next;
        }
        const std::size_t v = violations(next, pref1);
        if (v < best_viol) {
            best_viol = v;
            best_k = next;
        }
        k = next;
    }

    if (static_cast<double>(best_viol) > tol_fraction * static_cast<double>(n))
        throw DomainError(Err::inconsistent_actions,
                          "actions are not a threshold rule over scores",
                          "too many records disagree with every cut of the score axis");

    bool has_lo = false, has_hi = false;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = best_k; i-- > 0;) {
        const Record& r = log.records[order[i]];
        if (r.action == 0) {
            lo = r.score;
            has_lo = true;
            break;
        }
    }
    for (std::size_t i = best_k; i < n; ++i) {
        const Record& r = log.records[order[i]];
        if (r.action == 1) {
            hi = r.score;
            has_hi = true;
            break;
        }
    }

    if (has_lo && has_hi) return 0.5 * (lo + hi);
    if (has_hi) return hi - 1.0;   // every record acted on: threshold below all scores
    if (has_lo) return lo + 1.0;   // nothing acted on: threshold above all scores
    throw DomainError(Err::empty_log, "no records to infer a threshold from");
}

AuditResult audit_binary_agent(const DecisionLog& log, const AuditConfig& config) {
    log.validate();

    AuditResult out;
    out.priors = estimate_priors(log);
    out.tau_star_estimate = infer_threshold(log, config.consistency_tol);

    double slope;
    if (config.method == AuditMethod::parametric) {
        const BinormalFit fit = fit_binormal(log);
        const RocDerivatives d = parametric_derivatives(fit, out.tau_star_estimate);
        if (std::fabs(d.d_fpr_d_tau) < 1e-12)
            throw DomainError(Err::flat_fpr_window,
                              "false-positive rate is flat at the agent's threshold",
                              "the classes are too separated for slope information here");
        slope = (config.slope_formula == SlopeFormula::chain_rule)
                    ? d.d_tpr_d_tau / d.d_fpr_d_tau
                    : roc_slope_parametric(fit, out.tau_star_estimate, SlopeFormula::density_ratio);
        out.ethics = EthicsVector2D{d.d_tpr_d_tau, d.d_fpr_d_tau, out.tau_star_estimate};
    } else {
        const RocCurve roc = build_empirical_roc(log);
        const double bw = config.bandwidth ? *config.bandwidth : default_bandwidth(log);
        const RocDerivatives d = local_linear_derivatives(roc, out.tau_star_estimate, bw);
        slope = d.d_tpr_d_tau / d.d_fpr_d_tau;
        out.ethics = EthicsVector2D{d.d_tpr_d_tau, d.d_fpr_d_tau, out.tau_star_estimate};
    }

    out.recovered_ratio = recover_loss_ratio(slope, out.priors);
    return out;
}

} // namespace e2v
