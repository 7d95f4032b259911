#include "qgraph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_refine_iterations = 300;
// Interior samples per interval for the interleaving check, in units of the
// leading half-period pi / S0.
constexpr double scan_density = 8.0;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double coincidence_threshold(const TrigSpectralFunction& f, const SolverConfig& config) {
    return config.coincidence_tol * (1.0 + regularity_sum(f));
}

// k-hat_n = (gamma + n) pi / S0, the extrema of cos(S0 k - pi gamma).
double separator(const TrigSpectralFunction& f, long long n) {
    return (f.leading_phase() + static_cast<double>(n)) * pi / f.leading_action();
}

long long first_positive_separator(const TrigSpectralFunction& f) {
    long long n = static_cast<long long>(std::floor(-f.leading_phase())) + 1;
    while (separator(f, n - 1) > 0.0) --n;
    while (separator(f, n) <= 0.0) ++n;
    return n;
}

void require_regular(const TrigSpectralFunction& f) {
    if (!is_regular(f)) {
        std::ostringstream os;
        os << "separators need sum |a_j| < 1, got " << regularity_sum(f);
        throw Error(ErrorCode::regularity_violated, os.str());
    }
}

// Counts sign changes of f over [lo, hi] sampled at the scan resolution,
// endpoint values included.
int count_sign_changes(const TrigSpectralFunction& f, double lo, double hi, double v_lo,
                       double v_hi) {
    const double step = pi / (scan_density * f.leading_action());
    const int samples = std::max(4, static_cast<int>(std::ceil((hi - lo) / step)));
    int changes = 0;
    int previous = sign_of(v_lo);
    for (int i = 1; i <= samples; ++i) {
        const double v = i == samples ? v_hi : f(lo + (hi - lo) * i / samples);
        const int s = sign_of(v);
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

// Runs job(i) for i in [0, count) on up to `threads` workers. The exception
// from the lowest failing index is rethrown so failures are deterministic.
template <class Job>
void for_each_interval(std::size_t count, unsigned threads, Job&& job) {
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        run(0, count);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Roots of f on the partition 0 = p[0] < p[1] < ... < p[L+1]. The interior
// points p[1..L] are separators: f is assumed to have at most one root
// strictly between neighbouring points. p[0] is the origin, where a zero is
// trivial and never counted; p[L+1] only closes the last interval.
std::vector<Root> roots_on_partition(const TrigSpectralFunction& f, int level,
                                     std::span<const double> points, const SolverConfig& config) {
    const std::size_t n_points = points.size();
    if (n_points < 2) return {};
    const std::size_t n_intervals = n_points - 1;
    const double threshold = coincidence_threshold(f, config);

    std::vector<double> values(n_points);
    for (std::size_t i = 0; i < n_points; ++i) values[i] = f(points[i]);

    std::vector<char> coincident(n_points, 0);
    for (std::size_t i = 1; i + 1 < n_points; ++i)
        coincident[i] = std::abs(values[i]) <= threshold;
    const bool zero_at_origin = std::abs(values[0]) <= threshold;

    std::vector<std::optional<double>> interior(n_intervals);
    for_each_interval(n_intervals, config.threads, [&](std::size_t i) {
        const double lo = points[i];
        const double hi = points[i + 1];
        if (!(hi > lo)) return;
        if (coincident[i] || coincident[i + 1] || (i == 0 && zero_at_origin)) return;

        const int changes = count_sign_changes(f, lo, hi, values[i], values[i + 1]);
        if (changes > 1) throw SeparatorFailure(level, lo, hi, changes);

        const bool last = i + 1 == n_intervals;
        if (values[i] * values[i + 1] < 0.0 || (last && values[i + 1] == 0.0))
            interior[i] = extract_root(f, {lo, hi}, config.root_tol);
    });

    std::vector<Root> roots;
    for (std::size_t i = 0; i < n_intervals; ++i) {
        if (coincident[i]) roots.push_back({0, points[i], RootKind::separator_coincidence});
        if (interior[i]) roots.push_back({0, *interior[i], RootKind::interior});
    }
    return roots;
}

RootTable make_table(int level, std::vector<Root> roots, double k_max) {
    std::erase_if(roots, [&](const Root& r) { return !(r.k > 0.0) || r.k > k_max; });
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i].index = static_cast<int>(i) + 1;
    return {level, std::move(roots)};
}

}  // namespace

const char* to_string(RootKind kind) noexcept {
    return kind == RootKind::interior ? "interior" : "coincidence";
}

void SolverConfig::validate(double leading_action) const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
    if (!(k_max > 0.0) || !std::isfinite(k_max)) fail("k_max must be positive and finite");
    if (!(root_tol > 0.0)) fail("root_tol must be positive");
    if (!(coincidence_tol > 0.0)) fail("coincidence_tol must be positive");
    if (max_order < 0) fail("max_order must be nonnegative");
    if (threads == 0) fail("threads must be at least 1");
    if (!(root_tol < pi / leading_action)) fail("root_tol must be below the separator spacing pi/S0");
}

std::vector<double> RootTable::positions() const {
    std::vector<double> ks;
    ks.reserve(roots.size());
    for (const auto& r : roots) ks.push_back(r.k);
    return ks;
}

std::vector<double> RootTable::positions_with_multiplicity() const {
    std::vector<double> ks;
    ks.reserve(roots.size());
    for (const auto& r : roots) {
        ks.push_back(r.k);
        if (r.kind == RootKind::separator_coincidence) ks.push_back(r.k);
    }
    return ks;
}

std::vector<double> regular_separators(const TrigSpectralFunction& f, double k_max) {
    require_regular(f);
    std::vector<double> seps;
    for (long long n = first_positive_separator(f);; ++n) {
        const double k = separator(f, n);
        if (k > k_max) break;
        seps.push_back(k);
    }
    return seps;
}

double extract_root(const TrigSpectralFunction& f, Bracket bracket, double root_tol) {
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (sign_of(fa) == sign_of(fb)) {
        std::ostringstream os;
        os.precision(17);
        os << "f(" << a << ") = " << fa << " and f(" << b << ") = " << fb;
        throw Error(ErrorCode::bracket_violation, os.str());
    }

    // Brent (1973), zeroin.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < max_refine_iterations; ++iter) {
        if (sign_of(fb) == sign_of(fc)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 0.5 * root_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    std::ostringstream os;
    os.precision(17);
    os << "no convergence to " << root_tol << " in (" << bracket.lo << ", " << bracket.hi << ")";
    throw Error(ErrorCode::refinement_stall, os.str());
}

RootTable extract_regular_level(const TrigSpectralFunction& f, int level,
                                const SolverConfig& config) {
    require_regular(f);
    std::vector<double> points{0.0};
    const auto seps = regular_separators(f, config.k_max);
    points.insert(points.end(), seps.begin(), seps.end());
    // Close the last interval with the first separator beyond the window so
    // that every bracket is a full separator interval.
    long long n = first_positive_separator(f) + static_cast<long long>(seps.size());
    double next = separator(f, n);
    while (!(next > config.k_max)) next = separator(f, ++n);
    points.push_back(next);
    return make_table(level, roots_on_partition(f, level, points, config), config.k_max);
}

RootTable descend_level(const TrigSpectralFunction& lower, const RootTable& upper,
                        const SolverConfig& config) {
    std::vector<double> points{0.0};
    for (const auto& r : upper.roots)
        if (r.k > 0.0 && r.k <= config.k_max) points.push_back(r.k);
    if (points.back() < config.k_max) points.push_back(config.k_max);
    const int level = upper.level - 1;
    return make_table(level, roots_on_partition(lower, level, points, config), config.k_max);
}

std::vector<double> Spectrum::energies() const {
    std::vector<double> e;
    e.reserve(ground().roots.size());
    for (const auto& r : ground().roots) e.push_back(r.k * r.k);
    return e;
}

Spectrum solve_ladder(const TrigSpectralFunction& f0, const SolverConfig& config) {
    config.validate(f0.leading_action());
    const DerivativeLadder ladder = build_ladder(f0, config.max_order);
    const int order = ladder.order();
    const double spacing = pi / f0.leading_action();

    // Levels are solved on an extended window. A root of level m-1 that lies
    // past the last root of level m comes from a truncated bracket, so its
    // value depends on the window; everything below that point does not. The
    // window grows until the stable part covers (0, k_max], which keeps every
    // reported (n, k) identical when k_max is later increased.
    double margin = (order + 2) * spacing;
    for (;;) {
        SolverConfig extended = config;
        extended.k_max = config.k_max + margin;

        std::vector<RootTable> tables;
        tables.push_back(extract_regular_level(ladder.top(), order, extended));
        double stable = extended.k_max;
        for (int m = order; m >= 1; --m) {
            const RootTable& upper = tables.back();
            double last_stable = 0.0;
            for (const auto& r : upper.roots)
                if (r.k <= stable) last_stable = r.k;
            stable = last_stable;
            tables.push_back(descend_level(ladder.level(m - 1), upper, extended));
        }

        if (stable >= config.k_max) {
            Spectrum spectrum{order, {}};
            for (auto& t : tables) {
                std::erase_if(t.roots, [&](const Root& r) { return r.k > config.k_max; });
                spectrum.tables.push_back(std::move(t));
            }
            return spectrum;
        }
        margin *= 2.0;
    }
}

}  // namespace qgraph
