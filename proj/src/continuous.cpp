#include "ethics2vec/continuous.hpp"

#include <cmath>

#include "ethics2vec/errors.hpp"
#include "ethics2vec/kernels.hpp"

namespace e2v {

namespace {
constexpr double kArrivalTol = 1e-9;
constexpr double kStepTol = 1e-9;
constexpr double kZeroTol = 1e-12;
} // namespace

void Trajectory::validate() const {
    if (steps.empty()) throw DomainError(Err::empty_trace, "trajectory has no steps");
    if (!(dt > 0.0)) throw DomainError(Err::invalid_config, "trajectory dt must be positive");
    if (!(destination > 0.0))
        throw DomainError(Err::invalid_config, "trajectory destination must be positive");
    if (std::fabs(steps.front().x) > kStepTol)
        throw DomainError(Err::invalid_config, "trajectory must start at position 0");
    for (std::size_t k = 1; k < steps.size(); ++k) {
        const TrajectoryStep& prev = steps[k - 1];
        const TrajectoryStep& cur = steps[k];
        if (std::fabs(cur.t - prev.t - dt) > kStepTol)
            throw DomainError(Err::invalid_config, "trajectory time steps are not uniform");
        if (cur.x < prev.x)
            throw DomainError(Err::invalid_config, "trajectory position decreases");
        if (std::fabs(cur.x - prev.x - prev.u * dt) > kStepTol)
            throw DomainError(Err::invalid_config, "trajectory positions disagree with speeds");
    }
}

Trajectory simulate_trajectory(const ControlLaw& law, double horizon_T, double dt,
                               double destination, double u_cap) {
    if (!(dt > 0.0)) throw DomainError(Err::invalid_config, "dt must be positive");
    if (!(destination > 0.0))
        throw DomainError(Err::invalid_config, "destination must be positive");
    if (!(horizon_T > 0.0))
        throw DomainError(Err::invalid_horizon, "horizon must be positive");
    const long long n_steps = std::llround(horizon_T / dt);
    if (n_steps < 1 || std::fabs(static_cast<double>(n_steps) * dt - horizon_T) > kStepTol)
        throw DomainError(Err::invalid_horizon, "horizon is not a whole number of steps",
                          "pick horizon_T as an exact multiple of dt");

    const auto command = [&](double x) {
        const double u = law.law(x);
        if (!std::isfinite(u) || u < 0.0 || u > u_cap)
            throw DomainError(Err::range_violation, "control law returned a speed outside [0, cap]");
        return u;
    };

    Trajectory traj;
    traj.dt = dt;
    traj.destination = destination;
    traj.steps.reserve(static_cast<std::size_t>(n_steps) + 1);

    double x = 0.0;
    for (long long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        double u = 0.0;
        if (x < destination - kArrivalTol) {
            u = command(x);
            if (x + u * dt > destination) u = (destination - x) / dt;
        }
        traj.steps.push_back({t, x, u});
        x += u * dt;
    }
    const double t_end = static_cast<double>(n_steps) * dt;
    const double u_end = (x < destination - kArrivalTol) ? command(x) : 0.0;
    traj.steps.push_back({t_end, x, u_end});
    return traj;
}

double risk_derivative(const RiskModel& model, double x, double u, double t, double h) {
    if (!(h > 0.0)) throw DomainError(Err::invalid_config, "derivative step must be positive");
    if (model.deriv) return model.deriv(x, u, t);
    if (u - h < model.u_lo || u + h > model.u_hi)
        throw DomainError(Err::range_violation, "differencing stencil leaves the action range",
                          "shrink h or move the action away from the range edge");
    return (model.eval(x, u + h, t) - model.eval(x, u - h, t)) / (2.0 * h);
}

namespace {

EthicsTrace make_trace(const Trajectory& traj, const std::vector<RiskModel>& risks,
                       bool parallel) {
    traj.validate();
    if (risks.empty()) throw DomainError(Err::invalid_config, "no risk models given");

    EthicsTrace trace;
    trace.n_steps = traj.size();
    trace.risk_names.reserve(risks.size());
    for (const RiskModel& r : risks) trace.risk_names.push_back(r.name);
    trace.values.assign(trace.n_steps * risks.size(), 0.0);

    const std::size_t nr = risks.size();
    const auto fill = [&](std::size_t k) {
        const TrajectoryStep& s = traj.steps[k];
        if (s.x >= traj.destination - kArrivalTol) return; // arrived: zero sensitivity
        for (std::size_t i = 0; i < nr; ++i)
            trace.values[k * nr + i] = risk_derivative(risks[i], s.x, s.u, s.t);
    };
    if (parallel)
        kernels::fill_rows(trace.n_steps, fill);
    else
        kernels::fill_rows_serial(trace.n_steps, fill);
    return trace;
}

} // namespace

EthicsTrace ethics_trace(const Trajectory& traj, const std::vector<RiskModel>& risks) {
    return make_trace(traj, risks, true);
}

EthicsTrace ethics_trace_serial(const Trajectory& traj, const std::vector<RiskModel>& risks) {
    return make_trace(traj, risks, false);
}

std::vector<double> aggregate_ethics_vector(const EthicsTrace& trace) {
    if (trace.n_steps == 0) throw DomainError(Err::empty_trace, "trace has no steps");
    const std::size_t nr = trace.n_risks();
    std::vector<double> mean(nr, 0.0);
    for (std::size_t k = 0; k < trace.n_steps; ++k)
        for (std::size_t i = 0; i < nr; ++i) mean[i] += trace.entry(k, i);
    for (double& m : mean) m /= static_cast<double>(trace.n_steps);
    return mean;
}

std::vector<double> aggregate_ethics_vector(const EthicsTrace& trace,
                                            const std::vector<std::size_t>& step_indices) {
    if (step_indices.empty()) throw DomainError(Err::empty_trace, "no steps selected");
    const std::size_t nr = trace.n_risks();
    std::vector<double> mean(nr, 0.0);
    for (std::size_t k : step_indices) {
        if (k >= trace.n_steps)
            throw DomainError(Err::invalid_config, "step index outside the trace");
        for (std::size_t i = 0; i < nr; ++i) mean[i] += trace.entry(k, i);
    }
    for (double& m : mean) m /= static_cast<double>(step_indices.size());
    return mean;
}

WeightRatio weight_ratio(const EthicsTrace& trace, WeightMethod method) {
    if (trace.n_risks() != 2)
        throw DomainError(Err::not_two_risks, "weight ratio needs exactly two risks");
    if (trace.n_steps == 0) throw DomainError(Err::empty_trace, "trace has no steps");

    double value;
    if (method == WeightMethod::ratio_of_sums) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t k = 0; k < trace.n_steps; ++k) {
            s1 += trace.entry(k, 0);
            s2 += trace.entry(k, 1);
        }
        if (std::fabs(s1) < kZeroTol)
            throw DomainError(Err::degenerate_denominator,
                              "summed first-risk derivatives are numerically zero");
        value = -s2 / s1;
    } else {
        double acc = 0.0;
        std::size_t used = 0;
        for (std::size_t k = 0; k < trace.n_steps; ++k) {
            const double e1 = trace.entry(k, 0);
            const double e2 = trace.entry(k, 1);
            if (std::fabs(e1) < kZeroTol && std::fabs(e2) < kZeroTol) continue; // idle step
            if (std::fabs(e1) < kZeroTol)
                throw DomainError(Err::degenerate_denominator,
                                  "first-risk derivative is zero at an active step");
            acc += -e2 / e1;
            ++used;
        }
        if (used == 0)
            throw DomainError(Err::degenerate_denominator, "trace has no active steps");
        value = acc;
    }

    if (!std::isfinite(value))
        throw DomainError(Err::degenerate_denominator, "weight ratio is not finite");
    return WeightRatio{value, method};
}

} // namespace e2v
