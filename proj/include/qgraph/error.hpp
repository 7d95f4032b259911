#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

enum class ErrorCode {
    invalid_argument,
    degenerate_leading_term,
    unfoldable_top_action,
    order_cap_exceeded,
    regularity_violated,
    bracket_violation,
    refinement_stall,
    separator_failure,
};

/// Name used in diagnostics, e.g. "degenerate leading term".
const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a root interval holds more than one sign change of the lower
/// ladder level. Carries the offending interval.
class SeparatorFailure : public Error {
public:
    SeparatorFailure(int level, double lo, double hi, int sign_changes);

    int level() const noexcept { return level_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    int sign_changes() const noexcept { return sign_changes_; }

private:
    int level_;
    double lo_;
    double hi_;
    int sign_changes_;
};

}  // namespace qgraph
