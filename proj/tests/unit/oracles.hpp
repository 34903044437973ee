#pragma once

// Brute-force reference computations the tests check the library against.
// Everything here is intentionally naive: direct counting, plain central
// differences, textbook formulas.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ethics2vec/decision_log.hpp"

namespace oracle {

template <class F>
double fd_central(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// (fpr, tpr) at one threshold by walking every record.
inline std::pair<double, double> roc_point(const e2v::DecisionLog& log, double tau) {
    std::size_t n0 = 0, n1 = 0, hit0 = 0, hit1 = 0;
    for (const e2v::Record& r : log.records) {
        if (r.truth == 0) {
            ++n0;
            if (r.score >= tau) ++hit0;
        } else {
            ++n1;
            if (r.score >= tau) ++hit1;
        }
    }
    return {static_cast<double>(hit0) / static_cast<double>(n0),
            static_cast<double>(hit1) / static_cast<double>(n1)};
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

} // namespace oracle
