#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ethics2vec/binary_ethics.hpp"
#include "ethics2vec/continuous.hpp"

namespace e2v {

struct BinaryExperimentConfig {
    std::vector<double> ratios;      // empty means default_ratios()
    std::size_t n_per_agent = 100000;
    BinormalFit fit{0.0, 1.0, 1.0, 1.0};
    ClassPriors priors{0.5, 0.5};
    std::uint64_t seed = 0;

    void validate() const;
};

struct CarExperimentConfig {
    double destination = 250.0; // km
    double horizon_T = 4.0;     // hours
    double dt = 0.01;           // hours
    int n_laws = 10;
    double u_min = 40.0;        // km/h floor shared by every law
    double u_max_top = 130.0;   // km/h start speed of the most aggressive law
    double u_max_step = 6.0;    // km/h drop in start speed per law index
    double u_cap = 200.0;       // admissible action range upper bound
    double accident_k = 0.08;   // logistic steepness, per km/h
    double accident_u0 = 110.0; // logistic midpoint speed, km/h
    double lateness_a = 3.0;    // logistic steepness, per hour of deficit
    std::uint64_t seed = 0;

    void validate() const;
};

struct BinaryAgentRow {
    double true_ratio = 0.0;
    double true_tau_star = 0.0;
    double recovered_ratio = 0.0;
    double tau_star_estimate = 0.0;
    EthicsVector2D ethics;
};

struct CarLawRow {
    int law_id = 0;
    std::vector<double> aggregate;        // mean E over the full dt grid
    std::vector<double> aggregate_hourly; // mean E sampled at whole hours
    double ratio_of_sums = 0.0;
    double sum_of_ratios = 0.0;
    double final_x = 0.0;
};

// The study's 20 loss ratios: ten below one, ten above.
std::vector<double> default_ratios();

// Thresholding agent with the optimal threshold for the given ratio: samples
// truths from the priors and scores from the class-conditional normals, then
// acts by score >= tau*. Fully determined by config.seed.
std::pair<DecisionLog, double> generate_binary_agent_log(double ratio,
                                                         const BinaryExperimentConfig& config);

// Family of slowing-with-progress speed policies
// u_i(x) = u_min + (start_i - u_min) * (1 - x/destination), start_i stepping
// down with the law index, so law 1 is the most aggressive everywhere.
std::vector<ControlLaw> default_control_laws(const CarExperimentConfig& config);

// P(accident | u): logistic in speed, midpoint u0, steepness k. Analytic
// derivative included.
RiskModel accident_risk_model(double k = 0.08, double u0 = 110.0);

// P(late | x, u, t): logistic in the pace deficit
// (destination - x)/u - (T - t); zero once arrived, one when stalled.
// Analytic derivative included (throws DivisionByZeroSpeed at u=0 en route).
RiskModel lateness_risk_model(double destination, double horizon_T, double a = 3.0);

// Exhaustive minimizer of expected_loss over a threshold grid; test oracle
// for optimal_threshold.
double grid_search_threshold_oracle(const BinormalFit& fit, const ClassPriors& priors,
                                    const LossMatrix& losses, double lo, double hi,
                                    double step);

// Generate-and-audit loop over every ratio; per-agent RNG streams are
// derived from config.seed, so rows are independent of execution order.
std::vector<BinaryAgentRow> run_binary_experiment(const BinaryExperimentConfig& config,
                                                  const AuditConfig& audit = {});

std::vector<CarLawRow> run_car_experiment(const CarExperimentConfig& config);

// Steps landing on whole hours (t = 1h, 2h, ...), the coarse sampling view.
std::vector<std::size_t> hourly_step_indices(const Trajectory& traj);

} // namespace e2v
