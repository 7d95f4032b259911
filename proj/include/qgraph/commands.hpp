#pragma once

// The qgraph command-line surface. Each command writes data to `out` and
// diagnostics to `err` and returns the process exit status.

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgraph/solver.hpp"

namespace qgraph::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_solver = 2;
inline constexpr int exit_mismatch = 3;

struct CommonOptions {
    std::string graph_path;
    std::optional<double> k_max;
    std::optional<double> tol;
    std::optional<double> coincidence_tol;
    std::optional<int> max_order;
    unsigned threads = 1;
};

/// Table "n,k,E,kind" of the spectrum in (0, k_max]. Written to out_path when
/// given, otherwise to `out`.
int cmd_solve(const CommonOptions& options, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err);

/// "M = <order>; sums: <s0>, <s1>, ..." with the regularity sum per level.
int cmd_order(const CommonOptions& options, std::ostream& out, std::ostream& err);

/// Called on the solver's level-0 table before comparison; lets tests
/// corrupt the solver output.
using FaultHook = std::function<void(RootTable&)>;

/// Solver against the brute-force oracle plus a Weyl audit; tol defaults
/// to 1e-9.
int cmd_verify(const CommonOptions& options, std::ostream& out, std::ostream& err,
               const FaultHook& fault = {});

struct EvalGrid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

/// CSV "k,g0,...,gM" at the given points or on a uniform grid.
int cmd_eval(const CommonOptions& options, std::span<const double> ks,
             const std::optional<EvalGrid>& grid, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one of the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
