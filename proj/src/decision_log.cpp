#include "ethics2vec/decision_log.hpp"

#include <cmath>

#include "ethics2vec/errors.hpp"

namespace e2v {

std::size_t DecisionLog::count_truth(std::uint8_t cls) const {
    std::size_t n = 0;
    for (const Record& r : records)
        if (r.truth == cls) ++n;
    return n;
}

std::vector<double> DecisionLog::scores_of_class(std::uint8_t cls) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const Record& r : records)
        if (r.truth == cls) out.push_back(r.score);
    return out;
}

std::vector<double> DecisionLog::all_scores() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const Record& r : records) out.push_back(r.score);
    return out;
}

void DecisionLog::validate() const {
    if (records.empty())
        throw DomainError(Err::empty_log, "decision log contains no records");
    std::size_t n0 = 0, n1 = 0;
    for (const Record& r : records) {
        if (r.action > 1 || r.truth > 1)
            throw DomainError(Err::invalid_config, "action and truth must be 0 or 1");
        if (!std::isfinite(r.score))
            throw DomainError(Err::non_finite_score, "scores must be finite");
        (r.truth == 1 ? n1 : n0) += 1;
    }
    if (n0 < 2 || n1 < 2)
        throw DomainError(Err::single_class_log,
                          "need at least two records of each true class, got " + std::to_string(n0) +
                              " negative and " + std::to_string(n1) + " positive",
                          "collect more interactions covering both states");
}

void ClassPriors::validate() const {
    if (!(p_n > 0.0) || !(p_p > 0.0) || std::abs(p_n + p_p - 1.0) > 1e-12)
        throw DomainError(Err::invalid_config, "class priors must be positive and sum to 1");
}

ClassPriors estimate_priors(const DecisionLog& log) {
    log.validate();
    const double n = static_cast<double>(log.size());
    const double p_p = static_cast<double>(log.count_truth(1)) / n;
    return ClassPriors{1.0 - p_p, p_p};
}

} // namespace e2v
