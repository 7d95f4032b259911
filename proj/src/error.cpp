#include "qgraph/error.hpp"

#include <sstream>

namespace qgraph {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid argument";
        case ErrorCode::degenerate_leading_term: return "degenerate leading term";
        case ErrorCode::unfoldable_top_action: return "unfoldable top action";
        case ErrorCode::order_cap_exceeded: return "order cap exceeded";
        case ErrorCode::regularity_violated: return "regularity violated";
        case ErrorCode::bracket_violation: return "bracket violation";
        case ErrorCode::refinement_stall: return "refinement stall";
        case ErrorCode::separator_failure: return "separator failure";
    }
    return "unknown error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

namespace {

std::string describe_interval(int level, double lo, double hi, int sign_changes) {
    std::ostringstream os;
    os.precision(17);
    os << sign_changes << " sign changes of level " << level << " inside (" << lo << ", " << hi
       << ")";
    return os.str();
}

}  // namespace

SeparatorFailure::SeparatorFailure(int level, double lo, double hi, int sign_changes)
    : Error(ErrorCode::separator_failure, describe_interval(level, lo, hi, sign_changes)),
      level_(level),
      lo_(lo),
      hi_(hi),
      sign_changes_(sign_changes) {}

}  // namespace qgraph
