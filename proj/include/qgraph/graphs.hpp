#pragma once

// Spectral functions of the two dressed graphs with closed-form spectral
// equations: the three-bond star (Kirchhoff centre, Dirichlet dead ends) and
// the four-vertex chain.

#include <array>

#include "qgraph/trig.hpp"

namespace qgraph {

/// Three-bond star with scaling potentials V_l(E) = lambda_l E on its bonds.
/// Stored as reduced bond actions alpha_l = beta_l L_l and scaling constants
/// beta_l = sqrt(1 - lambda_l).
class StarGraphSpec {
public:
    /// L_l > 0 and 0 <= lambda_l < 1.
    static StarGraphSpec from_lengths(const std::array<double, 3>& lengths,
                                      const std::array<double, 3>& lambdas);

    /// alpha_l > 0 and 0 < beta_l <= 1.
    static StarGraphSpec from_scaling(const std::array<double, 3>& alpha,
                                      const std::array<double, 3>& beta);

    const std::array<double, 3>& alpha() const noexcept { return alpha_; }
    const std::array<double, 3>& beta() const noexcept { return beta_; }

private:
    StarGraphSpec(const std::array<double, 3>& alpha, const std::array<double, 3>& beta)
        : alpha_(alpha), beta_(beta) {}

    std::array<double, 3> alpha_;
    std::array<double, 3> beta_;
};

/// Four-vertex chain given directly by its action combinations S0..S3 and the
/// three bond scaling constants.
class ChainGraphSpec {
public:
    /// S0 > 0, |S_j| <= S0 and beta_l > 0.
    ChainGraphSpec(const std::array<double, 4>& actions, const std::array<double, 3>& beta);

    const std::array<double, 4>& actions() const noexcept { return actions_; }
    const std::array<double, 3>& beta() const noexcept { return beta_; }

    double r2() const noexcept;
    double r3() const noexcept;

private:
    std::array<double, 4> actions_;
    std::array<double, 3> beta_;
};

/// Raw (S0, S1, S2, S3); S1..S3 may be zero or negative.
std::array<double, 4> star_actions(const StarGraphSpec& spec) noexcept;

/// (a1, a2, a3); they always sum to 1.
std::array<double, 3> star_amplitudes(const StarGraphSpec& spec) noexcept;

TrigSpectralFunction build_star(const StarGraphSpec& spec);

/// sin(S0 k) + r2 sin(S1 k) + r2 r3 sin(S2 k) - r3 sin(S3 k), normalized.
TrigSpectralFunction build_chain(const ChainGraphSpec& spec);

/// Vertex reflection coefficient (b_a - b_b) / (b_a + b_b).
inline double reflection_coefficient(double beta_a, double beta_b) noexcept {
    return (beta_a - beta_b) / (beta_a + beta_b);
}

}  // namespace qgraph
