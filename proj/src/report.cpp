#include "ethics2vec/report.hpp"

#include <fstream>

#include "ethics2vec/errors.hpp"
#include "ethics2vec/rng.hpp"

namespace e2v {

nlohmann::json ethics_to_json(const EthicsVector2D& e) {
    return nlohmann::json{{"d_tpr_d_tau", e.d_tpr_d_tau},
                          {"d_fpr_d_tau", e.d_fpr_d_tau},
                          {"tau_star", e.tau_star}};
}

nlohmann::json report_to_json(const AuditReport& r) {
    nlohmann::json j{{"agent_id", r.agent_id},
                     {"method", r.method},
                     {"recovered_ratio", r.recovered_ratio},
                     {"seed", r.seed},
                     {"rng_algorithm", rng_algorithm_id},
                     {"config_echo", r.config_echo}};
    if (r.aggregate.empty())
        j["ethics_vector"] = ethics_to_json(r.ethics);
    else
        j["ethics_vector"] = r.aggregate;
    if (r.weight_ratio_sums) j["weight_ratio_of_sums"] = *r.weight_ratio_sums;
    if (r.weight_ratio_per_step) j["weight_sum_of_ratios"] = *r.weight_ratio_per_step;
    nlohmann::json diag = nlohmann::json::object();
    for (const auto& [name, value] : r.diagnostics) diag[name] = value;
    j["diagnostics"] = diag;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open for writing");
    out << j.dump(2) << '\n';
}

} // namespace e2v
