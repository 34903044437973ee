// Acceptance gate: one PASS/FAIL line per shipping criterion, exit code is
// the number of failures. argv[1] must point at the ethics-audit binary so
// the determinism check can run the real CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ethics2vec/binary_ethics.hpp"
#include "ethics2vec/continuous.hpp"
#include "ethics2vec/errors.hpp"
#include "ethics2vec/harness.hpp"
#include "ethics2vec/roc.hpp"
#include "ethics2vec/rng.hpp"

using namespace e2v;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Twenty simulated agents, one per catalogued loss ratio: parametric
//    recovery lands within 15% of truth for every agent and correlates
//    above 0.99 with the truth, in under 10 seconds.
void check_ratio_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    BinaryExperimentConfig cfg;
    cfg.seed = 20240817;
    std::vector<BinaryAgentRow> rows;
    try {
        rows = run_binary_experiment(cfg);
    } catch (const std::exception& e) {
        report(false, "ratio recovery", std::string("threw: ") + e.what());
        return;
    }
    const double elapsed = seconds_since(t0);

    double worst = 0.0;
    std::vector<double> truths, recovered;
    for (const BinaryAgentRow& r : rows) {
        worst = std::max(worst, rel_err(r.recovered_ratio, r.true_ratio));
        truths.push_back(r.true_ratio);
        recovered.push_back(r.recovered_ratio);
    }
    const double corr = pearson(truths, recovered);
    const bool ok = rows.size() == 20 && worst < 0.15 && corr > 0.99 && elapsed < 10.0;
    report(ok, "ratio recovery",
           "worst rel err " + fmt(worst) + ", correlation " + fmt(corr) + ", " + fmt(elapsed) +
               " s for " + std::to_string(rows.size()) + " agents");
}

// 2. The ratio-2 balanced equal-variance threshold is 0.5 + ln 2, and the
//    solver agrees with an exhaustive grid search to one grid step.
void check_threshold_oracle() {
    const BinormalFit fit{0.0, 1.0, 1.0, 1.0};
    const ClassPriors priors{0.5, 0.5};
    const LossMatrix losses{2.0, 1.0};
    try {
        const double solved = optimal_threshold(fit, priors, losses);
        const double closed_form = 0.5 + std::log(2.0);
        const double grid = grid_search_threshold_oracle(fit, priors, losses, -5.0, 6.0, 1e-4);
        const bool ok = std::fabs(solved - closed_form) < 1e-9 &&
                        std::fabs(solved - grid) <= 1e-4 + 1e-9;
        report(ok, "closed-form threshold",
               "solved " + fmt(solved) + ", closed form " + fmt(closed_form) + ", grid oracle " +
                   fmt(grid));
    } catch (const std::exception& e) {
        report(false, "closed-form threshold", std::string("threw: ") + e.what());
    }
}

// 3. At the solved threshold the ROC slope equals the prior-weighted loss
//    ratio (the stationarity identity) to 1e-6 relative, across 50 random
//    well-posed configurations.
void check_stationarity_identity() {
    Rng rng(424242);
    double worst = 0.0;
    int checked = 0;
    int attempts = 0;
    while (checked < 50 && attempts < 1000) {
        ++attempts;
        BinormalFit fit;
        fit.mu0 = rng.uniform() - 0.5;
        fit.mu1 = fit.mu0 + 0.6 + rng.uniform();
        fit.sigma0 = 0.8 + 0.45 * rng.uniform();
        fit.sigma1 = 0.8 + 0.45 * rng.uniform();
        const double p_p = 0.3 + 0.4 * rng.uniform();
        const ClassPriors priors{1.0 - p_p, p_p};
        const LossMatrix losses{std::exp(rng.uniform() * 3.2 - 1.6), 1.0};
        double tau = 0.0;
        try {
            tau = optimal_threshold(fit, priors, losses);
        } catch (const DomainError&) {
            continue; // boundary-dominated draw, try another
        }
        const double slope = roc_slope_parametric(fit, tau);
        const double target = losses.l_fp * priors.p_n / (losses.l_fn * priors.p_p);
        worst = std::max(worst, rel_gap(slope, target));
        ++checked;
    }
    const bool ok = checked == 50 && worst < 1e-6;
    report(ok, "slope stationarity",
           "worst rel residual " + fmt(worst) + " over " + std::to_string(checked) +
               " configurations");
}

// 4. Analytic derivatives match central finite differences to 1e-5
//    relative: ROC threshold derivatives (h = 1e-5 score units) and both
//    car risk derivatives (h = 1e-3 km/h), 100 random points each.
void check_derivative_fidelity() {
    Rng rng(535353);
    double worst_roc = 0.0;
    for (int i = 0; i < 100; ++i) {
        BinormalFit fit;
        fit.mu0 = rng.uniform() - 0.5;
        fit.mu1 = fit.mu0 + 0.5 + rng.uniform();
        fit.sigma0 = 0.8 + 0.45 * rng.uniform();
        fit.sigma1 = 0.8 + 0.45 * rng.uniform();
        const double lo = fit.mu0 - 0.5;
        const double hi = fit.mu1 + 0.5;
        const double tau = lo + (hi - lo) * rng.uniform();

        const RocDerivatives exact = parametric_derivatives(fit, tau);
        const double h = 1e-5;
        const double fd_tpr =
            (binormal_tpr(fit, tau + h) - binormal_tpr(fit, tau - h)) / (2.0 * h);
        const double fd_fpr =
            (binormal_fpr(fit, tau + h) - binormal_fpr(fit, tau - h)) / (2.0 * h);
        worst_roc = std::max(worst_roc, rel_gap(exact.d_tpr_d_tau, fd_tpr));
        worst_roc = std::max(worst_roc, rel_gap(exact.d_fpr_d_tau, fd_fpr));
    }

    const std::vector<RiskModel> risks = {accident_risk_model(),
                                          lateness_risk_model(250.0, 4.0)};
    double worst_risk = 0.0;
    const double h = 1e-3;
    for (int i = 0; i < 100; ++i) {
        const double x = 240.0 * rng.uniform();
        const double u = 40.0 + 90.0 * rng.uniform();
        const double t = 3.9 * rng.uniform();
        for (const RiskModel& m : risks) {
            const double exact = m.deriv(x, u, t);
            const double fd = (m.eval(x, u + h, t) - m.eval(x, u - h, t)) / (2.0 * h);
            worst_risk = std::max(worst_risk, rel_gap(exact, fd));
        }
    }
    const bool ok = worst_roc < 1e-5 && worst_risk < 1e-5;
    report(ok, "derivative fidelity",
           "worst rel gap " + fmt(worst_roc) + " (threshold), " + fmt(worst_risk) + " (risks)");
}

// 5. Parametric and nonparametric slope estimates agree within 10% on a
//    100k-record binormal log wherever both rates are inside [0.05, 0.95].
void check_method_agreement() {
    BinaryExperimentConfig cfg;
    cfg.n_per_agent = 100000;
    cfg.seed = 20240817;
    auto [log, tau_star] = generate_binary_agent_log(1.0, cfg);
    (void)tau_star;

    try {
        const BinormalFit fit = fit_binormal(log);
        const RocCurve roc = build_empirical_roc(log);
        const double bw = default_bandwidth(log);
        double worst = 0.0;
        for (const double tau : {-0.5, -0.2, 0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) {
            const double fpr = binormal_fpr(fit, tau);
            const double tpr = binormal_tpr(fit, tau);
            if (fpr < 0.05 || fpr > 0.95 || tpr < 0.05 || tpr > 0.95) continue;
            const double par = roc_slope_parametric(fit, tau);
            const double nonpar = roc_slope_nonparametric(roc, tau, bw);
            worst = std::max(worst, std::fabs(nonpar - par) / par);
        }
        report(worst < 0.10, "method agreement",
               "worst rel gap " + fmt(worst) + " across the central operating band");
    } catch (const std::exception& e) {
        report(false, "method agreement", std::string("threw: ") + e.what());
    }
}

// 6. The speed-law family produces the expected ethics geometry: accident
//    sensitivity >= 0, lateness sensitivity <= 0, and both shrink
//    monotonically from law 1 to law 10, in under 5 seconds.
void check_car_sweep() {
    const auto t0 = std::chrono::steady_clock::now();
    CarExperimentConfig cfg;
    std::vector<CarLawRow> rows;
    try {
        rows = run_car_experiment(cfg);
    } catch (const std::exception& e) {
        report(false, "car sweep", std::string("threw: ") + e.what());
        return;
    }
    const double elapsed = seconds_since(t0);

    bool signs = rows.size() == 10;
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        signs = signs && rows[i].aggregate[0] >= 0.0 && rows[i].aggregate[1] <= 0.0;
        if (i > 0) {
            monotone = monotone && rows[i].aggregate[0] < rows[i - 1].aggregate[0];
            monotone = monotone && rows[i].aggregate[1] < rows[i - 1].aggregate[1];
        }
    }
    const bool ok = signs && monotone && elapsed < 5.0;
    report(ok, "car sweep",
           std::string("signs ") + (signs ? "ok" : "broken") + ", sweep " +
               (monotone ? "monotone" : "not monotone") + ", " + fmt(elapsed) + " s");
}

// 7. Substituting the recovered weight ratio back into the aggregate
//    stationarity sum leaves a residual below 1e-9 of the trace's absolute
//    derivative mass, for every law.
void check_weight_residual() {
    CarExperimentConfig cfg;
    const std::vector<ControlLaw> laws = default_control_laws(cfg);
    const std::vector<RiskModel> risks = {
        accident_risk_model(cfg.accident_k, cfg.accident_u0),
        lateness_risk_model(cfg.destination, cfg.horizon_T, cfg.lateness_a)};

    double worst = 0.0;
    try {
        const std::vector<CarLawRow> rows = run_car_experiment(cfg);
        for (const CarLawRow& row : rows) {
            const Trajectory traj =
                simulate_trajectory(laws[static_cast<std::size_t>(row.law_id - 1)],
                                    cfg.horizon_T, cfg.dt, cfg.destination, cfg.u_cap);
            const EthicsTrace trace = ethics_trace(traj, risks);
            double s1 = 0.0, s2 = 0.0, mass = 0.0;
            for (std::size_t k = 0; k < trace.n_steps; ++k) {
                s1 += trace.entry(k, 0);
                s2 += trace.entry(k, 1);
                mass += std::fabs(trace.entry(k, 0)) + std::fabs(trace.entry(k, 1));
            }
            const double residual = std::fabs(row.ratio_of_sums * s1 + s2);
            worst = std::max(worst, residual / mass);
        }
    } catch (const std::exception& e) {
        report(false, "weight residual", std::string("threw: ") + e.what());
        return;
    }
    report(worst < 1e-9, "weight residual", "worst residual " + fmt(worst) + " of trace mass");
}

// 8. Halving the integration step moves every aggregate component by less
//    than 1%.
void check_step_size_stability() {
    CarExperimentConfig coarse;
    CarExperimentConfig fine;
    fine.dt = coarse.dt / 2.0;
    try {
        const std::vector<CarLawRow> a = run_car_experiment(coarse);
        const std::vector<CarLawRow> b = run_car_experiment(fine);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t c = 0; c < 2; ++c)
                worst = std::max(worst, rel_gap(a[i].aggregate[c], b[i].aggregate[c]));
        report(worst < 0.01, "step-size stability",
               "worst component change " + fmt(worst) + " when halving dt");
    } catch (const std::exception& e) {
        report(false, "step-size stability", std::string("threw: ") + e.what());
    }
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

// 9. Two CLI runs with the same seed and config write byte-identical
//    outputs, for both experiments. The rerun uses the very same output
//    directory (the resolved config is echoed into the reports, so it must
//    be identical too); the first run's files are snapshotted in between.
void check_determinism(const char* cli_path) {
    if (cli_path == nullptr) {
        report(false, "determinism", "no CLI path given (pass the ethics-audit binary as argv[1])");
        return;
    }
    const std::string cli = cli_path;
    const std::filesystem::path base =
        std::filesystem::temp_directory_path() / "e2v_acceptance";
    std::filesystem::remove_all(base);
    const std::filesystem::path out = base / "out";
    const std::filesystem::path snap = base / "first_run";
    std::filesystem::create_directories(snap);

    const std::string common = "--seed 20240817 --out-dir \"" + out.string() + "\" ";
    const std::vector<std::string> files = {
        "ratio_recovery.csv",          "binary_ethics_points.csv",
        "experiment_binary_report.json", "car_ethics_points.csv",
        "experiment_car_report.json",  "car_trace_law3.csv",
    };

    bool ok = true;
    std::string detail;
    for (int round = 0; round < 2; ++round) {
        if (run_cli(cli, common + "experiment-binary") != 0 ||
            run_cli(cli, common + "experiment-car --emit-trace 3") != 0) {
            report(false, "determinism", "a CLI invocation exited nonzero");
            return;
        }
        if (round == 0)
            for (const std::string& f : files)
                std::filesystem::copy_file(out / f, snap / f);
    }
    for (const std::string& f : files) {
        const std::string first = read_bytes(snap / f);
        const std::string second = read_bytes(out / f);
        if (first.empty() || first != second) {
            ok = false;
            detail += f + " differs; ";
        }
    }
    if (ok) detail = "all six experiment outputs byte-identical across reruns";
    report(ok, "determinism", detail);
}

} // namespace

int main(int argc, char** argv) {
    check_ratio_recovery();
    check_threshold_oracle();
    check_stationarity_identity();
    check_derivative_fidelity();
    check_method_agreement();
    check_car_sweep();
    check_weight_residual();
    check_step_size_stability();
    check_determinism(argc > 1 ? argv[1] : nullptr);

    if (g_failures == 0)
        std::printf("all acceptance checks passed\n");
    else
        std::printf("%d acceptance check(s) failed\n", g_failures);
    return g_failures;
}
