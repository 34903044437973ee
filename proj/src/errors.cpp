#include "ethics2vec/errors.hpp"

namespace e2v {

const char* err_name(Err code) {
    switch (code) {
    case Err::empty_log: return "EmptyLog";
    case Err::single_class_log: return "SingleClassLog";
    case Err::non_finite_score: return "NonFiniteScore";
    case Err::non_finite_threshold: return "NonFiniteThreshold";
    case Err::zero_variance: return "ZeroVariance";
    case Err::tau_out_of_range: return "TauOutOfRange";
    case Err::flat_fpr_window: return "FlatFprWindow";
    case Err::insufficient_points: return "InsufficientPoints";
    case Err::no_interior_optimum: return "NoInteriorOptimum";
    case Err::non_positive_slope: return "NonPositiveSlope";
    case Err::inconsistent_actions: return "InconsistentActions";
    case Err::not_two_risks: return "NotTwoRisks";
    case Err::degenerate_denominator: return "DegenerateDenominator";
    case Err::empty_trace: return "EmptyTrace";
    case Err::invalid_horizon: return "InvalidHorizon";
    case Err::range_violation: return "RangeViolation";
    case Err::division_by_zero_speed: return "DivisionByZeroSpeed";
    case Err::invalid_config: return "InvalidConfig";
    }
    return "UnknownError";
}

namespace {
std::string format_domain_message(Err code, const std::string& message, const std::string& hint) {
    std::string out = err_name(code);
    out += ": ";
    out += message;
    if (!hint.empty()) {
        out += " (hint: ";
        out += hint;
        out += ")";
    }
    return out;
}

std::string format_parse_message(const std::string& file, std::size_t line, const std::string& message) {
    std::string out = file;
    if (line > 0) {
        out += ":";
        out += std::to_string(line);
    }
    out += ": ";
    out += message;
    return out;
}
} // namespace

DomainError::DomainError(Err code, const std::string& message, const std::string& hint)
    : std::runtime_error(format_domain_message(code, message, hint)), code_(code) {}

ParseError::ParseError(std::string file, std::size_t line, const std::string& message)
    : std::runtime_error(format_parse_message(file, line, message)), file_(std::move(file)), line_(line) {}

} // namespace e2v
