#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace e2v {

enum class Err {
    empty_log,
    single_class_log,
    non_finite_score,
    non_finite_threshold,
    zero_variance,
    tau_out_of_range,
    flat_fpr_window,
    insufficient_points,
    no_interior_optimum,
    non_positive_slope,
    inconsistent_actions,
    not_two_risks,
    degenerate_denominator,
    empty_trace,
    invalid_horizon,
    range_violation,
    division_by_zero_speed,
    invalid_config,
};

/// Stable CamelCase name of an error code, e.g. "SingleClassLog".
const char* err_name(Err code);

/// Violation of a domain rule (degenerate input, uninformative operating
/// region, ...). `what()` carries the stable error name, a description,
/// and a remediation hint when one exists.
class DomainError : public std::runtime_error {
public:
    DomainError(Err code, const std::string& message, const std::string& hint = "");
    Err code() const noexcept { return code_; }

private:
    Err code_;
};

/// Malformed input file. Line numbers are 1-based; line 0 means the file
/// itself could not be read.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, const std::string& message);
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

} // namespace e2v
