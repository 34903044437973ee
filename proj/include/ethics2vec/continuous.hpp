#pragma once

#include <functional>
#include <string>
#include <vector>

namespace e2v {

// Speed policy: maps position (km) to commanded speed (km/h).
struct ControlLaw {
    int id = 0;
    std::function<double(double)> law;
};

// Differentiable-in-action risk probability. eval returns P(event | x, u, t);
// deriv, when present, is the exact partial derivative in u and is preferred
// over finite differencing. u_lo/u_hi bound the admissible action range.
struct RiskModel {
    std::string name;
    std::function<double(double x, double u, double t)> eval;
    std::function<double(double x, double u, double t)> deriv;
    double u_lo = 0.0;
    double u_hi = 200.0;
};

struct TrajectoryStep {
    double t = 0.0; // hours
    double x = 0.0; // km
    double u = 0.0; // km/h, action taken at t (0 once arrived)
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    double dt = 0.0;
    double destination = 0.0;

    std::size_t size() const { return steps.size(); }
    // Throws InvalidConfig on broken spacing, start, or step consistency.
    void validate() const;
};

// Per-step derivative vectors, stored step-major: entry(k, i) is the
// derivative of risk i with respect to the action at step k.
struct EthicsTrace {
    std::vector<double> values;
    std::vector<std::string> risk_names;
    std::size_t n_steps = 0;

    std::size_t n_risks() const { return risk_names.size(); }
    double entry(std::size_t step, std::size_t risk) const {
        return values[step * risk_names.size() + risk];
    }
};

enum class WeightMethod { ratio_of_sums, sum_of_ratios };

struct WeightRatio {
    double value = 0.0;
    WeightMethod method = WeightMethod::ratio_of_sums;
};

// Euler integration of dx/dt = law(x) from x=0 until the horizon, clamping
// at the destination (a final partial step records the realized speed, later
// steps hold the position with u=0). horizon_T must be a multiple of dt.
Trajectory simulate_trajectory(const ControlLaw& law, double horizon_T, double dt,
                               double destination, double u_cap = 200.0);

// Exact derivative when the model carries one, otherwise a central
// difference with step h, which must stay inside [u_lo, u_hi].
double risk_derivative(const RiskModel& model, double x, double u, double t, double h = 1e-3);

// E(t) for every step: the action-sensitivity of each risk at the visited
// state. Steps at the destination contribute zeros (no action, saturated
// risks). The parallel version is the default; both give identical results.
EthicsTrace ethics_trace(const Trajectory& traj, const std::vector<RiskModel>& risks);
EthicsTrace ethics_trace_serial(const Trajectory& traj, const std::vector<RiskModel>& risks);

// Componentwise mean of E(t), over all steps or over a chosen subset.
std::vector<double> aggregate_ethics_vector(const EthicsTrace& trace);
std::vector<double> aggregate_ethics_vector(const EthicsTrace& trace,
                                            const std::vector<std::size_t>& step_indices);

// Criterion weight ratio w1/w2 solving the aggregate stationarity condition
// sum_t (w1*E1(t) + w2*E2(t)) = 0: the default returns -sum(E2)/sum(E1).
// sum_of_ratios instead accumulates -E2(t)/E1(t) per step (steps where both
// components vanish are skipped; a lone zero denominator is an error).
WeightRatio weight_ratio(const EthicsTrace& trace,
                         WeightMethod method = WeightMethod::ratio_of_sums);

} // namespace e2v
