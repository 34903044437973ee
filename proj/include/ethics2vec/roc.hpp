#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ethics2vec/decision_log.hpp"

namespace e2v {

struct RocPoint {
    double tau = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

// Operating characteristic as a step curve: points sorted ascending in tau,
// fpr and tpr non-increasing (both are class-conditional survival functions
// of the score, P(s >= tau | class)).
struct RocCurve {
    std::vector<RocPoint> points;

    std::size_t size() const { return points.size(); }
    double min_tau() const { return points.front().tau; }
    double max_tau() const { return points.back().tau; }

    // Throws InvalidConfig if ordering or range invariants are broken.
    void validate() const;
};

// Class-conditional normal score model: truth=0 scores ~ N(mu0, sigma0^2),
// truth=1 scores ~ N(mu1, sigma1^2).
struct BinormalFit {
    double mu0 = 0.0;
    double sigma0 = 1.0;
    double mu1 = 1.0;
    double sigma1 = 1.0;

    void validate() const;
};

struct RocDerivatives {
    double d_tpr_d_tau = 0.0;
    double d_fpr_d_tau = 0.0;
};

// Exact slope ratio at a threshold vs the density-ratio shortcut that drops
// the 1/sigma factors. The two agree when sigma0 == sigma1.
enum class SlopeFormula { chain_rule, density_ratio };

double binormal_tpr(const BinormalFit& fit, double tau);
double binormal_fpr(const BinormalFit& fit, double tau);

// Empirical curve over the log's own score grid (unique scores plus one
// sentinel below the minimum and one above the maximum), or over a caller
// supplied threshold list. Prediction rule is action=1 iff score >= tau,
// so ties at the threshold count as positives.
RocCurve build_empirical_roc(const DecisionLog& log);
RocCurve build_empirical_roc(const DecisionLog& log, std::span<const double> thresholds);

// Per-class sample moments (sd with n-1 denominator). Throws ZeroVariance
// when a class has (numerically) identical scores.
BinormalFit fit_binormal(const DecisionLog& log);

// d(TPR)/d(tau) = -phi((mu1-tau)/sigma1)/sigma1 and the class-0 analogue.
// Both are strictly negative for any valid fit.
RocDerivatives parametric_derivatives(const BinormalFit& fit, double tau);

// dTPR/dFPR at tau. chain_rule divides the exact threshold derivatives;
// density_ratio returns phi(z1)/phi(z0) with the 1/sigma factors dropped.
double roc_slope_parametric(const BinormalFit& fit, double tau,
                            SlopeFormula formula = SlopeFormula::chain_rule);

// Local linear regression of tpr-vs-tau and fpr-vs-tau over the curve
// points within +/- bandwidth of tau. Needs at least 3 points in the
// window; refuses when the fpr slope is below 1e-12 in magnitude.
RocDerivatives local_linear_derivatives(const RocCurve& roc, double tau, double bandwidth);

double roc_slope_nonparametric(const RocCurve& roc, double tau, double bandwidth);

// 0.25 x sample standard deviation of all scores in the log.
double default_bandwidth(const DecisionLog& log);

} // namespace e2v
