#pragma once

// Graph specification files (YAML). One document per graph:
//
//   kind: star                 # star | chain | trig
//   alpha: [1, 7, 11]          # star: alpha + beta, or L + lambda
//   beta: [0.1, 0.2, 0.5]
//   solver:                    # optional
//     k_max: 4
//     root_tol: 1e-12
//     coincidence_tol: 1e-10
//     max_order: 64
//
//   kind: chain
//   actions: [19, 17, 5, 3]
//   beta: [0.4, 0.5, 0.3]
//
//   kind: trig
//   leading: {S0: 19, gamma0: 0}
//   terms:
//     - {S: 17, gamma: 0, a: 0.75}
//
// Phases (gamma0, gamma) are in units of pi.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qgraph/graphs.hpp"
#include "qgraph/solver.hpp"
#include "qgraph/trig.hpp"

namespace qgraph {

enum class GraphKind { star, chain, trig };

const char* to_string(GraphKind kind) noexcept;

struct SolverOverrides {
    std::optional<double> k_max;
    std::optional<double> root_tol;
    std::optional<double> coincidence_tol;
    std::optional<int> max_order;

    /// Applies the present fields on top of base.
    SolverConfig apply(SolverConfig base) const;
};

struct GraphSpecFile {
    GraphKind kind = GraphKind::trig;
    TrigSpectralFunction function;
    std::optional<StarGraphSpec> star;
    std::optional<ChainGraphSpec> chain;
    SolverOverrides solver;
};

/// Malformed or invalid spec file. what() reads "source:line:column: message".
class SpecFileError : public std::runtime_error {
public:
    SpecFileError(const std::string& source, int line, int column, const std::string& message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

GraphSpecFile parse_graph_spec(std::string_view text, const std::string& source = "<input>");

GraphSpecFile load_graph_spec(const std::filesystem::path& path);

/// A "trig" document that reloads to the same function; numbers are written
/// in shortest round-trip form.
std::string emit_trig_spec(const TrigSpectralFunction& f, const SolverOverrides& solver = {});

/// Locale-independent shortest round-trip decimal form.
std::string format_number(double value);

/// Locale-independent form with 17 significant digits.
std::string format_full(double value);

}  // namespace qgraph
