#include "ethics2vec/harness.hpp"

#include <cmath>

#include "ethics2vec/errors.hpp"
#include "ethics2vec/kernels.hpp"
#include "ethics2vec/normal.hpp"
#include "ethics2vec/rng.hpp"

namespace e2v {

void BinaryExperimentConfig::validate() const {
    fit.validate();
    priors.validate();
    if (n_per_agent < 100)
        throw DomainError(Err::invalid_config, "need at least 100 records per agent");
    for (double r : ratios)
        if (!std::isfinite(r) || !(r > 0.0))
            throw DomainError(Err::invalid_config, "loss ratios must be positive");
}

void CarExperimentConfig::validate() const {
    if (!(destination > 0.0) || !(horizon_T > 0.0) || !(dt > 0.0))
        throw DomainError(Err::invalid_config, "destination, horizon and dt must be positive");
    if (n_laws < 1) throw DomainError(Err::invalid_config, "need at least one control law");
    if (!(u_min >= 0.0) || !(u_max_top > u_min))
        throw DomainError(Err::invalid_config, "law speeds must satisfy 0 <= u_min < u_max_top");
    if (!(u_max_step >= 0.0)) throw DomainError(Err::invalid_config, "law speed step must be >= 0");
    const double slowest_start = u_max_top - u_max_step * (n_laws - 1);
    if (!(slowest_start > u_min))
        throw DomainError(Err::invalid_config, "slowest law's start speed falls below u_min");
    if (!(u_cap >= u_max_top))
        throw DomainError(Err::invalid_config, "speed cap below the fastest law");
    if (!(accident_k > 0.0) || !(lateness_a > 0.0))
        throw DomainError(Err::invalid_config, "risk steepness parameters must be positive");
}

std::vector<double> default_ratios() {
    return {0.10, 0.14, 0.19, 0.23, 0.28, 0.32, 0.37, 0.41, 0.46, 0.50,
            2.00, 2.33, 2.67, 3.00, 3.33, 3.67, 4.00, 4.33, 4.67, 5.00};
}

std::pair<DecisionLog, double> generate_binary_agent_log(double ratio,
                                                         const BinaryExperimentConfig& config) {
    config.validate();
    if (!std::isfinite(ratio) || !(ratio > 0.0))
        throw DomainError(Err::invalid_config, "loss ratio must be positive");

    const LossMatrix losses{ratio, 1.0};
    const double tau_star = optimal_threshold(config.fit, config.priors, losses);

    Rng rng(config.seed);
    DecisionLog log;
    log.records.resize(config.n_per_agent);
    for (Record& rec : log.records) {
        rec.truth = rng.bernoulli(config.priors.p_p) ? 1 : 0;
        rec.score = rec.truth ? rng.normal(config.fit.mu1, config.fit.sigma1)
                              : rng.normal(config.fit.mu0, config.fit.sigma0);
        rec.action = rec.score >= tau_star ? 1 : 0;
    }
    return {std::move(log), tau_star};
}

std::vector<ControlLaw> default_control_laws(const CarExperimentConfig& config) {
    config.validate();
    std::vector<ControlLaw> laws;
    laws.reserve(static_cast<std::size_t>(config.n_laws));
    for (int i = 1; i <= config.n_laws; ++i) {
        const double start = config.u_max_top - config.u_max_step * (i - 1);
        const double u_min = config.u_min;
        const double dest = config.destination;
        laws.push_back(ControlLaw{i, [start, u_min, dest](double x) {
                                      double frac = 1.0 - x / dest;
                                      if (frac < 0.0) frac = 0.0;
                                      if (frac > 1.0) frac = 1.0;
                                      return u_min + (start - u_min) * frac;
                                  }});
    }
    return laws;
}

RiskModel accident_risk_model(double k, double u0) {
    RiskModel m;
    m.name = "accident";
    m.eval = [k, u0](double, double u, double) { return logistic(k * (u - u0)); };
    m.deriv = [k, u0](double, double u, double) {
        const double r = logistic(k * (u - u0));
        return k * r * (1.0 - r);
    };
    return m;
}

RiskModel lateness_risk_model(double destination, double horizon_T, double a) {
    RiskModel m;
    m.name = "lateness";
    const double dest = destination;
    const double T = horizon_T;
    m.eval = [dest, T, a](double x, double u, double t) {
        if (x >= dest - 1e-9) return 0.0; // arrived
        if (u <= 0.0) return 1.0;         // stalled means late
        const double gap = (dest - x) / u - (T - t);
        return logistic(a * gap);
    };
    m.deriv = [dest, T, a](double x, double u, double t) {
        if (x >= dest - 1e-9) return 0.0;
        if (u <= 0.0)
            throw DomainError(Err::division_by_zero_speed,
                              "lateness sensitivity undefined at zero speed en route");
        const double gap = (dest - x) / u - (T - t);
        const double r = logistic(a * gap);
        return a * r * (1.0 - r) * (-(dest - x) / (u * u));
    };
    return m;
}

double grid_search_threshold_oracle(const BinormalFit& fit, const ClassPriors& priors,
                                    const LossMatrix& losses, double lo, double hi,
                                    double step) {
    if (!(step > 0.0) || !(hi > lo))
        throw DomainError(Err::invalid_config, "grid search needs step > 0 and hi > lo");
    double best_tau = lo;
    double best_loss = expected_loss(lo, fit, priors, losses);
    const long long n = std::llround((hi - lo) / step);
    for (long long i = 1; i <= n; ++i) {
        const double tau = lo + static_cast<double>(i) * step;
        const double loss = expected_loss(tau, fit, priors, losses);
        if (loss < best_loss) {
            best_loss = loss;
            best_tau = tau;
        }
    }
    return best_tau;
}

std::vector<BinaryAgentRow> run_binary_experiment(const BinaryExperimentConfig& config,
                                                  const AuditConfig& audit) {
    config.validate();
    BinaryExperimentConfig resolved = config;
    if (resolved.ratios.empty()) resolved.ratios = default_ratios();

    std::vector<BinaryAgentRow> rows(resolved.ratios.size());
    kernels::fill_rows(rows.size(), [&](std::size_t i) {
        BinaryExperimentConfig agent_config = resolved;
        agent_config.seed = derive_stream_seed(resolved.seed, i);
        auto [log, tau_true] = generate_binary_agent_log(resolved.ratios[i], agent_config);
        const AuditResult res = audit_binary_agent(log, audit);
        rows[i] = BinaryAgentRow{resolved.ratios[i], tau_true, res.recovered_ratio,
                                 res.tau_star_estimate, res.ethics};
    });
    return rows;
}

std::vector<CarLawRow> run_car_experiment(const CarExperimentConfig& config) {
    config.validate();
    const std::vector<ControlLaw> laws = default_control_laws(config);
    const std::vector<RiskModel> risks = {
        accident_risk_model(config.accident_k, config.accident_u0),
        lateness_risk_model(config.destination, config.horizon_T, config.lateness_a)};

    std::vector<CarLawRow> rows;
    rows.reserve(laws.size());
    for (const ControlLaw& law : laws) {
        const Trajectory traj = simulate_trajectory(law, config.horizon_T, config.dt,
                                                    config.destination, config.u_cap);
        const EthicsTrace trace = ethics_trace(traj, risks);
        CarLawRow row;
        row.law_id = law.id;
        row.aggregate = aggregate_ethics_vector(trace);
        row.aggregate_hourly = aggregate_ethics_vector(trace, hourly_step_indices(traj));
        row.ratio_of_sums = weight_ratio(trace, WeightMethod::ratio_of_sums).value;
        row.sum_of_ratios = weight_ratio(trace, WeightMethod::sum_of_ratios).value;
        row.final_x = traj.steps.back().x;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::size_t> hourly_step_indices(const Trajectory& traj) {
    traj.validate();
    std::vector<std::size_t> idx;
    const double t_end = traj.steps.back().t;
    for (long long h = 1; static_cast<double>(h) <= t_end + 1e-9; ++h) {
        const long long k = std::llround(static_cast<double>(h) / traj.dt);
        if (k >= 0 && static_cast<std::size_t>(k) < traj.size() &&
            std::fabs(traj.steps[static_cast<std::size_t>(k)].t - static_cast<double>(h)) <= 1e-6)
            idx.push_back(static_cast<std::size_t>(k));
    }
    if (idx.empty())
        throw DomainError(Err::empty_trace, "no steps land on whole hours",
                          "dt must divide one hour for the coarse sampling view");
    return idx;
}

} // namespace e2v
