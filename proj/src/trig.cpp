#include "qgraph/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

constexpr double phase_tol = 1e-12;

// True when a - b is (within phase_tol) a multiple of period.
bool congruent(double a, double b, double period) {
    const double r = std::fmod(std::abs(a - b), period);
    return r <= phase_tol || period - r <= phase_tol;
}

double cos_term(double action, double phase, double k) {
    return std::cos(action * k - std::numbers::pi * phase);
}

std::string term_text(const CosineTerm& t) {
    std::ostringstream os;
    os.precision(17);
    os << "(S=" << t.action << ", gamma=" << t.phase << ", a=" << t.amplitude << ")";
    return os.str();
}

}  // namespace

double TrigSpectralFunction::operator()(double k) const noexcept {
    double value = cos_term(leading_.action, leading_.phase, k);
    for (const auto& t : terms_) value -= t.amplitude * cos_term(t.action, t.phase, k);
    return value;
}

double evaluate(const TrigSpectralFunction& f, double k) noexcept { return f(k); }

TrigSpectralFunction normalize(std::span<const CosineTerm> raw, LeadingTerm leading) {
    if (!(leading.action > 0.0) || !std::isfinite(leading.action) || !std::isfinite(leading.phase))
        throw Error(ErrorCode::invalid_argument, "leading action must be positive and finite");

    double leading_coeff = 1.0;
    double folded_mass = 0.0;
    std::vector<CosineTerm> terms;
    terms.reserve(raw.size());

    for (CosineTerm t : raw) {
        if (!std::isfinite(t.action) || !std::isfinite(t.phase) || !std::isfinite(t.amplitude))
            throw Error(ErrorCode::invalid_argument, "non-finite term " + term_text(t));
        if (std::abs(t.action) > leading.action)
            throw Error(ErrorCode::invalid_argument,
                        "term action exceeds the leading action " + term_text(t));

        // cos(-S k - pi gamma) == cos(S k + pi gamma)
        if (t.action < 0.0) {
            t.action = -t.action;
            t.phase = -t.phase + 0.0;
        }

        if (t.action == leading.action) {
            if (congruent(t.phase, leading.phase, 2.0)) {
                leading_coeff -= t.amplitude;
            } else if (congruent(t.phase, leading.phase + 1.0, 2.0)) {
                leading_coeff += t.amplitude;
            } else {
                throw Error(ErrorCode::unfoldable_top_action, term_text(t));
            }
            folded_mass += std::abs(t.amplitude);
            continue;
        }

        auto same = [&](const CosineTerm& u) {
            return u.action == t.action && congruent(u.phase, t.phase, 2.0);
        };
        if (auto it = std::find_if(terms.begin(), terms.end(), same); it != terms.end())
            it->amplitude += t.amplitude;
        else
            terms.push_back(t);
    }

    std::erase_if(terms, [](const CosineTerm& t) { return t.amplitude == 0.0; });

    if (std::abs(leading_coeff) <= 1e-14 * (1.0 + folded_mass))
        throw Error(ErrorCode::degenerate_leading_term, "");

    if (leading_coeff < 0.0) {
        leading.phase += 1.0;
        leading_coeff = -leading_coeff;
    }
    if (leading_coeff != 1.0) {
        for (auto& t : terms) t.amplitude /= leading_coeff;
    }
    return TrigSpectralFunction(leading, std::move(terms));
}

TrigSpectralFunction derivative_level(const TrigSpectralFunction& f, int m) {
    if (m < 0) throw Error(ErrorCode::invalid_argument, "derivative level must be nonnegative");
    LeadingTerm leading = f.leading_;
    std::vector<CosineTerm> terms = f.terms_;
    for (int step = 0; step < m; ++step) {
        leading.phase -= 0.5;
        for (auto& t : terms) {
            t.phase -= 0.5;
            t.amplitude *= t.action / leading.action;
        }
    }
    return TrigSpectralFunction(leading, std::move(terms));
}

double regularity_sum(const TrigSpectralFunction& f) noexcept {
    double sum = 0.0;
    for (const auto& t : f.terms()) sum += std::abs(t.amplitude);
    return sum;
}

DerivativeLadder build_ladder(const TrigSpectralFunction& f, int max_order) {
    if (max_order < 0) throw Error(ErrorCode::invalid_argument, "max_order must be nonnegative");
    std::vector<TrigSpectralFunction> levels{f};
    while (!is_regular(levels.back())) {
        if (static_cast<int>(levels.size()) > max_order) {
            std::ostringstream os;
            os << "level " << max_order << " still has regularity sum "
               << regularity_sum(levels.back());
            throw Error(ErrorCode::order_cap_exceeded, os.str());
        }
        levels.push_back(derivative_level(levels.back(), 1));
    }
    return DerivativeLadder(std::move(levels));
}

}  // namespace qgraph
