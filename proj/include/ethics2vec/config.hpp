#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ethics2vec/binary_ethics.hpp"
#include "ethics2vec/harness.hpp"

namespace e2v {

// Everything a run resolves to. Every field has a printable default and
// round-trips through JSON; a report's config echo is one of these.
struct RunConfig {
    std::uint64_t seed = 20240817;
    std::string method = "parametric"; // or "nonparametric"
    std::string out_dir = ".";
    int threads = 0; // 0 = automatic

    struct Binary {
        std::vector<double> ratios = default_ratios();
        std::uint64_t n_per_agent = 100000;
        double mu0 = 0.0;
        double sigma0 = 1.0;
        double mu1 = 1.0;
        double sigma1 = 1.0;
        double p_positive = 0.5;
        double bandwidth = 0.0; // 0 = 0.25 x score standard deviation
        double consistency_tol = 1e-3;
        std::string slope_formula = "chain_rule"; // or "density_ratio"
    } binary;

    struct Car {
        double destination = 250.0;
        double horizon_hours = 4.0;
        double dt = 0.01;
        int n_laws = 10;
        double u_min = 40.0;
        double u_max_top = 130.0;
        double u_max_step = 6.0;
        double u_cap = 200.0;
        double accident_k = 0.08;
        double accident_u0 = 110.0;
        double lateness_a = 3.0;
    } car;

    BinaryExperimentConfig binary_experiment() const;
    CarExperimentConfig car_experiment() const;
    AuditConfig audit() const;
};

nlohmann::json config_to_json(const RunConfig& config);

// Applies the keys present in `j` on top of `base`; any key the schema does
// not define is a ParseError naming the offending path.
RunConfig config_from_json(const nlohmann::json& j, const std::string& source,
                           const RunConfig& base = {});

RunConfig load_config(const std::string& path, const RunConfig& base = {});

std::string config_text(const RunConfig& config);

} // namespace e2v
