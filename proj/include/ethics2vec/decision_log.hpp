#pragma once

#include <cstdint>
#include <vector>

namespace e2v {

/// One observed interaction: the agent's internal score, the binary action
/// it took, and the true state.
struct Record {
    double score = 0.0;
    std::uint8_t action = 0;
    std::uint8_t truth = 0;
};

struct DecisionLog {
    std::vector<Record> records;

    std::size_t size() const { return records.size(); }
    std::size_t count_truth(std::uint8_t cls) const;

    /// Scores of records with truth == cls, in log order.
    std::vector<double> scores_of_class(std::uint8_t cls) const;
    std::vector<double> all_scores() const;

    /// Enforces what ROC analysis needs: at least two records per class,
    /// labels in {0,1}, finite scores. Throws EmptyLog, SingleClassLog,
    /// InvalidConfig or NonFiniteScore.
    void validate() const;
};

/// Class frequencies; p_n + p_p must equal 1 within 1e-12 and both must be
/// strictly positive.
struct ClassPriors {
    double p_n = 0.5;
    double p_p = 0.5;
    void validate() const;
};

/// Frequency estimates: p_p = (#truth=1)/n, p_n = 1 - p_p.
ClassPriors estimate_priors(const DecisionLog& log);

} // namespace e2v
