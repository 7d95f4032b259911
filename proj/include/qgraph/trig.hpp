#pragma once

// Spectral functions of scaling quantum graphs:
//
//   g(k) = cos(S0 k - pi gamma0) - sum_j a_j cos(S_j k - pi gamma_j)
//
// Phases are stored in units of pi so that the half-period shifts produced by
// differentiation stay exact.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qgraph {

struct CosineTerm {
    double action = 0.0;     // S_j
    double phase = 0.0;      // gamma_j, units of pi
    double amplitude = 0.0;  // a_j

    friend bool operator==(const CosineTerm&, const CosineTerm&) = default;
};

struct LeadingTerm {
    double action = 0.0;  // S0
    double phase = 0.0;   // gamma0, units of pi
    friend bool operator==(const LeadingTerm&, const LeadingTerm&) = default;
};

/// A normalized spectral function. Instances only come out of normalize() and
/// derivative_level(), so the invariants below always hold:
///   - S0 > 0 and 0 <= S_j < S0
///   - no two terms share (S_j, gamma_j mod 2)
///   - the leading coefficient is exactly 1
class TrigSpectralFunction {
public:
    double leading_action() const noexcept { return leading_.action; }
    double leading_phase() const noexcept { return leading_.phase; }
    LeadingTerm leading() const noexcept { return leading_; }
    std::span<const CosineTerm> terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    double operator()(double k) const noexcept;

    friend bool operator==(const TrigSpectralFunction&, const TrigSpectralFunction&) = default;

private:
    TrigSpectralFunction(LeadingTerm leading, std::vector<CosineTerm> terms)
        : leading_(leading), terms_(std::move(terms)) {}

    friend TrigSpectralFunction normalize(std::span<const CosineTerm>, LeadingTerm);
    friend TrigSpectralFunction derivative_level(const TrigSpectralFunction&, int);

    LeadingTerm leading_;
    std::vector<CosineTerm> terms_;
};

/// Brings raw terms into canonical form: negative actions are folded through
/// the evenness of cosine, duplicate (S, gamma mod 2) pairs are merged, terms
/// with S = S0 are absorbed into the leading coefficient and the result is
/// rescaled to a unit leading coefficient. Zero-amplitude terms are dropped.
///
/// Throws Error with invalid_argument, degenerate_leading_term or
/// unfoldable_top_action.
TrigSpectralFunction normalize(std::span<const CosineTerm> raw, LeadingTerm leading);

double evaluate(const TrigSpectralFunction& f, double k) noexcept;

/// g^(m): the m-th derivative of f divided by S0^m. Each step shifts every
/// phase by -1/2 and scales every amplitude by S_j/S0, applied one level at a
/// time so that composing levels is bit-for-bit associative.
TrigSpectralFunction derivative_level(const TrigSpectralFunction& f, int m);

/// Sum of |a_j|. The function is regular when this is strictly below 1.
double regularity_sum(const TrigSpectralFunction& f) noexcept;

/// Sums this close to 1 count as the boundary. A star's amplitudes add up to
/// exactly 1 but the floating-point sum can land a few ulps below it.
inline constexpr double regularity_margin = 1e-12;

inline bool is_regular(const TrigSpectralFunction& f) noexcept {
    return regularity_sum(f) < 1.0 - regularity_margin;
}

inline constexpr int default_max_order = 64;

class DerivativeLadder {
public:
    /// Smallest m for which level m is regular.
    int order() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    const TrigSpectralFunction& level(int m) const { return levels_.at(static_cast<std::size_t>(m)); }
    const TrigSpectralFunction& top() const noexcept { return levels_.back(); }
    std::span<const TrigSpectralFunction> levels() const noexcept { return levels_; }

private:
    explicit DerivativeLadder(std::vector<TrigSpectralFunction> levels)
        : levels_(std::move(levels)) {}

    friend DerivativeLadder build_ladder(const TrigSpectralFunction&, int);

    std::vector<TrigSpectralFunction> levels_;
};

/// Differentiates until the regularity condition holds. Throws Error with
/// order_cap_exceeded when more than max_order steps would be needed.
DerivativeLadder build_ladder(const TrigSpectralFunction& f, int max_order = default_max_order);

}  // namespace qgraph
