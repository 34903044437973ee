#pragma once

#include <optional>

#include "ethics2vec/roc.hpp"

namespace e2v {

// Costs for the two error cells; correct decisions cost nothing.
struct LossMatrix {
    double l_fp = 1.0;
    double l_fn = 1.0;

    void validate() const;
    double ratio() const { return l_fp / l_fn; }
};

// Binary embedding: threshold sensitivities of the two operating rates,
// evaluated at the agent's threshold. Both components are negative (raising
// the threshold can only shrink survival probabilities).
struct EthicsVector2D {
    double d_tpr_d_tau = 0.0;
    double d_fpr_d_tau = 0.0;
    double tau_star = 0.0;
};

enum class AuditMethod { parametric, nonparametric };

struct AuditConfig {
    AuditMethod method = AuditMethod::parametric;
    // Window half-width for the nonparametric slope; 0.25 x score sd when unset.
    std::optional<double> bandwidth;
    SlopeFormula slope_formula = SlopeFormula::chain_rule;
    // Fraction of records allowed to disagree with the best threshold rule.
    double consistency_tol = 1e-3;
};

struct AuditResult {
    double recovered_ratio = 0.0;
    EthicsVector2D ethics;
    double tau_star_estimate = 0.0;
    ClassPriors priors;
};

// Average cost of thresholding at tau under the binormal model:
// l_fp * FPR(tau) * p_n + l_fn * (1 - TPR(tau)) * p_p.
double expected_loss(double tau, const BinormalFit& fit, const ClassPriors& priors,
                     const LossMatrix& losses);

// Cost-minimizing threshold. Solves slope(tau) = (l_fp*p_n)/(l_fn*p_p) by
// bracketed root finding on log slope(tau), keeping the crossing where the
// loss derivative turns positive; throws NoInteriorOptimum when no interior
// stationary point beats the constant policies.
double optimal_threshold(const BinormalFit& fit, const ClassPriors& priors,
                         const LossMatrix& losses);

// L_FP/L_FN implied by the ROC slope at the agent's threshold.
double recover_loss_ratio(double slope_at_tau_star, const ClassPriors& priors);

EthicsVector2D ethics_vector_binary(const BinormalFit& fit, double tau_star);

// Decision boundary implied by the logged actions: midpoint between the
// largest threshold-consistent action-0 score and the smallest consistent
// action-1 score. Throws InconsistentActions when more than tol_fraction of
// records disagree with every threshold rule.
double infer_threshold(const DecisionLog& log, double tol_fraction = 1e-3);

// Full audit: recover the threshold from actions, estimate the ROC slope
// there by the chosen method, and map it to a loss ratio and embedding.
AuditResult audit_binary_agent(const DecisionLog& log, const AuditConfig& config = {});

} // namespace e2v
