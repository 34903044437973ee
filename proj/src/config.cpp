#include "ethics2vec/config.hpp"

#include <fstream>

#include "ethics2vec/errors.hpp"

namespace e2v {

BinaryExperimentConfig RunConfig::binary_experiment() const {
    BinaryExperimentConfig c;
    c.ratios = binary.ratios;
    c.n_per_agent = static_cast<std::size_t>(binary.n_per_agent);
    c.fit = BinormalFit{binary.mu0, binary.sigma0, binary.mu1, binary.sigma1};
    c.priors = ClassPriors{1.0 - binary.p_positive, binary.p_positive};
    c.seed = seed;
    return c;
}

CarExperimentConfig RunConfig::car_experiment() const {
    CarExperimentConfig c;
    c.destination = car.destination;
    c.horizon_T = car.horizon_hours;
    c.dt = car.dt;
    c.n_laws = car.n_laws;
    c.u_min = car.u_min;
    c.u_max_top = car.u_max_top;
    c.u_max_step = car.u_max_step;
    c.u_cap = car.u_cap;
    c.accident_k = car.accident_k;
    c.accident_u0 = car.accident_u0;
    c.lateness_a = car.lateness_a;
    c.seed = seed;
    return c;
}

AuditConfig RunConfig::audit() const {
    AuditConfig a;
    if (method == "parametric")
        a.method = AuditMethod::parametric;
    else if (method == "nonparametric")
        a.method = AuditMethod::nonparametric;
    else
        throw DomainError(Err::invalid_config,
                          "method must be 'parametric' or 'nonparametric'");
    if (binary.bandwidth != 0.0) {
        if (!(binary.bandwidth > 0.0))
            throw DomainError(Err::invalid_config, "bandwidth must be positive");
        a.bandwidth = binary.bandwidth;
    }
    if (binary.slope_formula == "chain_rule")
        a.slope_formula = SlopeFormula::chain_rule;
    else if (binary.slope_formula == "density_ratio")
        a.slope_formula = SlopeFormula::density_ratio;
    else
        throw DomainError(Err::invalid_config,
                          "slope_formula must be 'chain_rule' or 'density_ratio'");
    a.consistency_tol = binary.consistency_tol;
    return a;
}

nlohmann::json config_to_json(const RunConfig& c) {
    return nlohmann::json{
        {"seed", c.seed},
        {"method", c.method},
        {"out_dir", c.out_dir},
        {"threads", c.threads},
        {"binary",
         {{"ratios", c.binary.ratios},
          {"n_per_agent", c.binary.n_per_agent},
          {"mu0", c.binary.mu0},
          {"sigma0", c.binary.sigma0},
          {"mu1", c.binary.mu1},
          {"sigma1", c.binary.sigma1},
          {"p_positive", c.binary.p_positive},
          {"bandwidth", c.binary.bandwidth},
          {"consistency_tol", c.binary.consistency_tol},
          {"slope_formula", c.binary.slope_formula}}},
        {"car",
         {{"destination", c.car.destination},
          {"horizon_hours", c.car.horizon_hours},
          {"dt", c.car.dt},
          {"n_laws", c.car.n_laws},
          {"u_min", c.car.u_min},
          {"u_max_top", c.car.u_max_top},
          {"u_max_step", c.car.u_max_step},
          {"u_cap", c.car.u_cap},
          {"accident_k", c.car.accident_k},
          {"accident_u0", c.car.accident_u0},
          {"lateness_a", c.car.lateness_a}}}};
}

namespace {

[[noreturn]] void unknown_key(const std::string& source, const std::string& key) {
    throw ParseError(source, 0, "unknown config key '" + key + "'");
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& into, const std::string& source) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(into);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, std::string("bad value for '") + key + "': " + e.what());
    }
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                const std::string& source, const std::string& prefix) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) unknown_key(source, prefix + item.key());
    }
}

} // namespace

RunConfig config_from_json(const nlohmann::json& j, const std::string& source,
                           const RunConfig& base) {
    if (!j.is_object()) throw ParseError(source, 0, "config root must be an object");
    check_keys(j, {"seed", "method", "out_dir", "threads", "binary", "car"}, source, "");

    RunConfig c = base;
    take(j, "seed", c.seed, source);
    take(j, "method", c.method, source);
    take(j, "out_dir", c.out_dir, source);
    take(j, "threads", c.threads, source);

    if (j.contains("binary")) {
        const nlohmann::json& b = j.at("binary");
        if (!b.is_object()) throw ParseError(source, 0, "'binary' must be an object");
        check_keys(b,
                   {"ratios", "n_per_agent", "mu0", "sigma0", "mu1", "sigma1", "p_positive",
                    "bandwidth", "consistency_tol", "slope_formula"},
                   source, "binary.");
        take(b, "ratios", c.binary.ratios, source);
        take(b, "n_per_agent", c.binary.n_per_agent, source);
        take(b, "mu0", c.binary.mu0, source);
        take(b, "sigma0", c.binary.sigma0, source);
        take(b, "mu1", c.binary.mu1, source);
        take(b, "sigma1", c.binary.sigma1, source);
        take(b, "p_positive", c.binary.p_positive, source);
        take(b, "bandwidth", c.binary.bandwidth, source);
        take(b, "consistency_tol", c.binary.consistency_tol, source);
        take(b, "slope_formula", c.binary.slope_formula, source);
    }
    if (j.contains("car")) {
        const nlohmann::json& v = j.at("car");
        if (!v.is_object()) throw ParseError(source, 0, "'car' must be an object");
        check_keys(v,
                   {"destination", "horizon_hours", "dt", "n_laws", "u_min", "u_max_top",
                    "u_max_step", "u_cap", "accident_k", "accident_u0", "lateness_a"},
                   source, "car.");
        take(v, "destination", c.car.destination, source);
        take(v, "horizon_hours", c.car.horizon_hours, source);
        take(v, "dt", c.car.dt, source);
        take(v, "n_laws", c.car.n_laws, source);
        take(v, "u_min", c.car.u_min, source);
        take(v, "u_max_top", c.car.u_max_top, source);
        take(v, "u_max_step", c.car.u_max_step, source);
        take(v, "u_cap", c.car.u_cap, source);
        take(v, "accident_k", c.car.accident_k, source);
        take(v, "accident_u0", c.car.accident_u0, source);
        take(v, "lateness_a", c.car.lateness_a, source);
    }
    return c;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open for reading");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, 0, e.what());
    }
    return config_from_json(j, path, base);
}

std::string config_text(const RunConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

} // namespace e2v
