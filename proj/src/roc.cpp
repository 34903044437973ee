#include "ethics2vec/roc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ethics2vec/errors.hpp"
#include "ethics2vec/kernels.hpp"
#include "ethics2vec/normal.hpp"

namespace e2v {

void RocCurve::validate() const {
    if (points.empty()) throw DomainError(Err::invalid_config, "ROC curve has no points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const RocPoint& p = points[i];
        if (!(p.fpr >= 0.0 && p.fpr <= 1.0 && p.tpr >= 0.0 && p.tpr <= 1.0))
            throw DomainError(Err::invalid_config, "ROC rates outside [0,1]");
        if (i > 0) {
            const RocPoint& q = points[i - 1];
            if (!(p.tau > q.tau))
                throw DomainError(Err::invalid_config, "ROC thresholds not strictly increasing");
            if (p.fpr > q.fpr || p.tpr > q.tpr)
                throw DomainError(Err::invalid_config, "ROC rates increase with threshold");
        }
    }
}

void BinormalFit::validate() const {
    if (!std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(sigma0) ||
        !std::isfinite(sigma1))
        throw DomainError(Err::invalid_config, "binormal parameters must be finite");
    if (!(sigma0 > 0.0) || !(sigma1 > 0.0))
        throw DomainError(Err::invalid_config, "binormal standard deviations must be positive");
}

double binormal_tpr(const BinormalFit& fit, double tau) {
    return norm_cdf((fit.mu1 - tau) / fit.sigma1);
}

double binormal_fpr(const BinormalFit& fit, double tau) {
    return norm_cdf((fit.mu0 - tau) / fit.sigma0);
}

namespace {

RocCurve roc_from_thresholds(const DecisionLog& log, std::vector<double> taus) {
    std::vector<double> neg = log.scores_of_class(0);
    std::vector<double> pos = log.scores_of_class(1);
    std::sort(neg.begin(), neg.end());
    std::sort(pos.begin(), pos.end());

    std::vector<std::size_t> neg_tail(taus.size()), pos_tail(taus.size());
    kernels::tail_counts(neg, taus, neg_tail);
    kernels::tail_counts(pos, taus, pos_tail);

    RocCurve roc;
    roc.points.resize(taus.size());
    const double n0 = static_cast<double>(neg.size());
    const double n1 = static_cast<double>(pos.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        roc.points[i].tau = taus[i];
        roc.points[i].fpr = static_cast<double>(neg_tail[i]) / n0;
        roc.points[i].tpr = static_cast<double>(pos_tail[i]) / n1;
    }
    return roc;
}

} // namespace

RocCurve build_empirical_roc(const DecisionLog& log) {
    log.validate();
    std::vector<double> taus = log.all_scores();
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    const double lo = taus.front() - 1.0;
    const double hi = taus.back() + 1.0;
    taus.insert(taus.begin(), lo);
    taus.push_back(hi);
    return roc_from_thresholds(log, std::move(taus));
}

RocCurve build_empirical_roc(const DecisionLog& log, std::span<const double> thresholds) {
    log.validate();
    if (thresholds.empty())
        throw DomainError(Err::non_finite_threshold, "threshold list is empty");
    std::vector<double> taus(thresholds.begin(), thresholds.end());
    for (double t : taus)
        if (!std::isfinite(t))
            throw DomainError(Err::non_finite_threshold, "thresholds must be finite");
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    return roc_from_thresholds(log, std::move(taus));
}

namespace {

struct Moments {
    double mean;
    double sd;
};

Moments class_moments(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

} // namespace

BinormalFit fit_binormal(const DecisionLog& log) {
    log.validate();
    const Moments m0 = class_moments(log.scores_of_class(0));
    const Moments m1 = class_moments(log.scores_of_class(1));
    const auto degenerate = [](const Moments& m) {
        return m.sd <= 1e-12 * std::max(1.0, std::fabs(m.mean));
    };
    if (degenerate(m0))
        throw DomainError(Err::zero_variance, "class-0 scores have no spread",
                          "the binormal model needs score variation within each class");
    if (degenerate(m1))
        throw DomainError(Err::zero_variance, "class-1 scores have no spread",
                          "the binormal model needs score variation within each class");
    return BinormalFit{m0.mean, m0.sd, m1.mean, m1.sd};
}

RocDerivatives parametric_derivatives(const BinormalFit& fit, double tau) {
    fit.validate();
    RocDerivatives d;
    d.d_tpr_d_tau = -norm_pdf((fit.mu1 - tau) / fit.sigma1) / fit.sigma1;
    d.d_fpr_d_tau = -norm_pdf((fit.mu0 - tau) / fit.sigma0) / fit.sigma0;
    return d;
}

double roc_slope_parametric(const BinormalFit& fit, double tau, SlopeFormula formula) {
    fit.validate();
    const double z1 = (fit.mu1 - tau) / fit.sigma1;
    const double z0 = (fit.mu0 - tau) / fit.sigma0;
    // phi(z1)/phi(z0) in exp form; stays finite far into the tails where the
    // densities themselves underflow.
    const double density_ratio = std::exp(0.5 * (z0 * z0 - z1 * z1));
    if (formula == SlopeFormula::density_ratio) return density_ratio;
    return density_ratio * fit.sigma0 / fit.sigma1;
}

RocDerivatives local_linear_derivatives(const RocCurve& roc, double tau, double bandwidth) {
    roc.validate();
    if (!(bandwidth > 0.0))
        throw DomainError(Err::invalid_config, "bandwidth must be positive");
    if (!std::isfinite(tau) || tau < roc.min_tau() || tau > roc.max_tau())
        throw DomainError(Err::tau_out_of_range, "threshold outside the curve's range",
                          "supply thresholds covering the operating point");

    const auto& pts = roc.points;
    auto lo = std::lower_bound(pts.begin(), pts.end(), tau - bandwidth,
                               [](const RocPoint& p, double v) { return p.tau < v; });
    auto hi = std::upper_bound(lo, pts.end(), tau + bandwidth,
                               [](double v, const RocPoint& p) { return v < p.tau; });
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    if (n < 3)
        throw DomainError(Err::insufficient_points, "fewer than 3 curve points in window",
                          "widen the bandwidth or supply a denser threshold grid");

    double t_mean = 0.0, f_mean = 0.0, p_mean = 0.0;
    for (auto it = lo; it != hi; ++it) {
        t_mean += it->tau;
        f_mean += it->fpr;
        p_mean += it->tpr;
    }
    t_mean /= static_cast<double>(n);
    f_mean /= static_cast<double>(n);
    p_mean /= static_cast<double>(n);

    double stt = 0.0, stf = 0.0, stp = 0.0;
    for (auto it = lo; it != hi; ++it) {
        const double dt = it->tau - t_mean;
        stt += dt * dt;
        stf += dt * (it->fpr - f_mean);
        stp += dt * (it->tpr - p_mean);
    }
    if (stt <= 0.0)
        throw DomainError(Err::insufficient_points, "window has no threshold spread");

    RocDerivatives d;
    d.d_tpr_d_tau = stp / stt;
    d.d_fpr_d_tau = stf / stt;
    if (std::fabs(d.d_fpr_d_tau) < 1e-12)
        throw DomainError(Err::flat_fpr_window, "false-positive rate is flat around the threshold",
                          "the operating region carries no slope information here");
    return d;
}

double roc_slope_nonparametric(const RocCurve& roc, double tau, double bandwidth) {
    const RocDerivatives d = local_linear_derivatives(roc, tau, bandwidth);
    return d.d_tpr_d_tau / d.d_fpr_d_tau;
}

double default_bandwidth(const DecisionLog& log) {
    std::vector<double> all = log.all_scores();
    const Moments m = class_moments(all);
    return 0.25 * m.sd;
}

} // namespace e2v
