#include "qgraph/graphs.hpp"

#include <cmath>
#include <string>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

}  // namespace

StarGraphSpec StarGraphSpec::from_lengths(const std::array<double, 3>& lengths,
                                          const std::array<double, 3>& lambdas) {
    std::array<double, 3> alpha{};
    std::array<double, 3> beta{};
    for (std::size_t l = 0; l < 3; ++l) {
        require(std::isfinite(lengths[l]) && lengths[l] > 0.0,
                "bond length L" + std::to_string(l + 1) + " must be positive");
        // lambda >= 1 puts a turning point on the bond.
        require(std::isfinite(lambdas[l]) && lambdas[l] >= 0.0 && lambdas[l] < 1.0,
                "scaling constant lambda" + std::to_string(l + 1) + " must lie in [0, 1)");
        beta[l] = std::sqrt(1.0 - lambdas[l]);
        alpha[l] = beta[l] * lengths[l];
    }
    return StarGraphSpec(alpha, beta);
}

StarGraphSpec StarGraphSpec::from_scaling(const std::array<double, 3>& alpha,
                                          const std::array<double, 3>& beta) {
    for (std::size_t l = 0; l < 3; ++l) {
        require(std::isfinite(alpha[l]) && alpha[l] > 0.0,
                "reduced action alpha" + std::to_string(l + 1) + " must be positive");
        require(std::isfinite(beta[l]) && beta[l] > 0.0 && beta[l] <= 1.0,
                "beta" + std::to_string(l + 1) + " must lie in (0, 1]");
    }
    return StarGraphSpec(alpha, beta);
}

ChainGraphSpec::ChainGraphSpec(const std::array<double, 4>& actions,
                               const std::array<double, 3>& beta)
    : actions_(actions), beta_(beta) {
    require(std::isfinite(actions[0]) && actions[0] > 0.0, "chain action S0 must be positive");
    for (std::size_t j = 1; j < 4; ++j) {
        require(std::isfinite(actions[j]) && std::abs(actions[j]) <= actions[0],
                "chain action S" + std::to_string(j) + " must satisfy |S" + std::to_string(j) +
                    "| <= S0");
    }
    for (std::size_t l = 0; l < 3; ++l) {
        require(std::isfinite(beta[l]) && beta[l] > 0.0,
                "beta" + std::to_string(l + 1) + " must be positive");
    }
}

double ChainGraphSpec::r2() const noexcept { return reflection_coefficient(beta_[0], beta_[1]); }
double ChainGraphSpec::r3() const noexcept { return reflection_coefficient(beta_[1], beta_[2]); }

std::array<double, 4> star_actions(const StarGraphSpec& spec) noexcept {
    const auto& [a1, a2, a3] = spec.alpha();
    return {a1 + a2 + a3, -a1 + a2 + a3, a1 - a2 + a3, a1 + a2 - a3};
}

std::array<double, 3> star_amplitudes(const StarGraphSpec& spec) noexcept {
    const auto& [b1, b2, b3] = spec.beta();
    const double sum = b1 + b2 + b3;
    return {(-b1 + b2 + b3) / sum, (b1 - b2 + b3) / sum, (b1 + b2 - b3) / sum};
}

TrigSpectralFunction build_star(const StarGraphSpec& spec) {
    const auto s = star_actions(spec);
    const auto a = star_amplitudes(spec);
    const std::array<CosineTerm, 3> raw{{
        {s[1], 0.0, a[0]},
        {s[2], 0.0, a[1]},
        {s[3], 0.0, a[2]},
    }};
    return normalize(raw, {s[0], 0.0});
}

TrigSpectralFunction build_chain(const ChainGraphSpec& spec) {
    const auto& s = spec.actions();
    const double r2 = spec.r2();
    const double r3 = spec.r3();
    // sin x = cos(x - pi/2)
    const std::array<CosineTerm, 3> raw{{
        {s[1], 0.5, -r2},
        {s[2], 0.5, -r2 * r3},
        {s[3], 0.5, r3},
    }};
    return normalize(raw, {s[0], 0.5});
}

}  // namespace qgraph
