#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ethics2vec/binary_ethics.hpp"

namespace e2v {

// One audited agent, with everything needed to replay the run: the full
// resolved config, the seed, and the generator algorithm identifier.
struct AuditReport {
    std::string agent_id;
    std::string method;
    double recovered_ratio = 0.0;
    EthicsVector2D ethics;
    std::vector<double> aggregate; // continuous embedding; empty for binary audits
    std::optional<double> weight_ratio_sums;
    std::optional<double> weight_ratio_per_step;
    std::vector<std::pair<std::string, double>> diagnostics;
    nlohmann::json config_echo;
    std::uint64_t seed = 0;
};

nlohmann::json ethics_to_json(const EthicsVector2D& e);
nlohmann::json report_to_json(const AuditReport& report);

// Serializes with sorted keys and a trailing newline; identical inputs give
// identical bytes.
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace e2v
