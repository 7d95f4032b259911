#pragma once

// Explicit spectrum of a spectral function via its derivative ladder.
//
// At the regular level M the extrema of the leading cosine separate the roots,
// one root per separator interval. The roots of level m are then the
// separators of level m-1: between two of them level m-1 is monotone, so each
// interval holds at most one root, which is isolated by bracketed refinement.
// Repeating this down to level 0 yields every positive root with a stable
// counting index n.

#include <span>
#include <vector>

#include "qgraph/trig.hpp"

namespace qgraph {

struct SolverConfig {
    double k_max = 0.0;             // window is (0, k_max]
    double root_tol = 1e-12;        // absolute tolerance on each root
    double coincidence_tol = 1e-10; // scaled by 1 + sum |a_j| of the tested level
    int max_order = default_max_order;
    unsigned threads = 1;           // workers for interval extraction within a level

    /// Throws Error(invalid_argument) unless every field is usable for a
    /// function with the given leading action.
    void validate(double leading_action) const;
};

enum class RootKind { interior, separator_coincidence };

const char* to_string(RootKind kind) noexcept;

struct Root {
    int index = 0;  // 1-based counting index within its level
    double k = 0.0;
    RootKind kind = RootKind::interior;

    friend bool operator==(const Root&, const Root&) = default;
};

struct RootTable {
    int level = 0;
    std::vector<Root> roots;

    std::vector<double> positions() const;
    /// As positions(), but a coincidence root is listed twice: it is a zero
    /// of this level and of the one above, so at least a double root.
    std::vector<double> positions_with_multiplicity() const;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// Extrema of the leading cosine of a regular function inside (0, k_max],
/// where S0 k - pi gamma is a multiple of pi. Throws
/// Error(regularity_violated) if f is not regular.
std::vector<double> regular_separators(const TrigSpectralFunction& f, double k_max);

/// The unique simple zero of f in the bracket, to within root_tol. Brent's
/// method; every iterate stays inside the current bracket.
///
/// Throws Error(bracket_violation) if f has the same nonzero sign at both
/// ends, Error(refinement_stall) if the tolerance cannot be met.
double extract_root(const TrigSpectralFunction& f, Bracket bracket, double root_tol = 1e-12);

/// Roots of a regular level in (0, config.k_max], one per separator interval.
RootTable extract_regular_level(const TrigSpectralFunction& f, int level,
                                const SolverConfig& config);

/// Roots of level m-1 given the complete roots of level m on (0, k_max].
/// A separator where |f_lower| is below the coincidence threshold is itself
/// recorded as a root and its adjacent intervals are not searched.
///
/// Throws SeparatorFailure if an interval holds more than one sign change.
RootTable descend_level(const TrigSpectralFunction& lower, const RootTable& upper,
                        const SolverConfig& config);

struct Spectrum {
    int order = 0;
    std::vector<RootTable> tables;  // levels M, M-1, ..., 0

    const RootTable& ground() const { return tables.back(); }
    std::vector<double> energies() const;
};

/// Complete positive spectrum of f0 in (0, config.k_max].
Spectrum solve_ladder(const TrigSpectralFunction& f0, const SolverConfig& config);

}  // namespace qgraph
