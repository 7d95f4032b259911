#include "qgraph/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qgraph/error.hpp"

namespace qgraph::oracle {

namespace {

constexpr double pi = std::numbers::pi;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// d/dk of the cosine sum, written out directly from the terms.
double slope(const TrigSpectralFunction& f, double k) {
    double d = -f.leading_action() *
               std::sin(f.leading_action() * k - pi * f.leading_phase());
    for (const auto& t : f.terms())
        d += t.amplitude * t.action * std::sin(t.action * k - pi * t.phase);
    return d;
}

template <class F>
double bisect(F&& fn, double lo, double hi, double tol) {
    double f_lo = fn(lo);
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = fn(mid);
        if (f_mid == 0.0) return mid;
        if (sign_of(f_mid) == sign_of(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double default_scan_step(const TrigSpectralFunction& f) noexcept {
    return pi / (40.0 * f.leading_action());
}

std::vector<double> scan_roots(const TrigSpectralFunction& f, double lo, double hi,
                               const ScanOptions& options) {
    if (!(hi > lo)) return {};
    const double step = options.scan_step > 0.0 ? options.scan_step : default_scan_step(f);
    if (step > pi / (4.0 * f.leading_action()))
        throw Error(ErrorCode::invalid_argument, "scan step exceeds pi / (4 S0)");

    const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    std::vector<double> x(cells + 1);
    std::vector<double> v(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        x[i] = i == cells ? hi : lo + static_cast<double>(i) * step;
        v[i] = f(x[i]);
    }
    // The window is open at lo. A zero sitting on lo is not ours; shift the
    // first sample a quarter cell inward so its sign is meaningful.
    if (std::abs(v[0]) <= options.coincidence_tol) {
        x[0] = lo + 0.25 * (x[1] - lo);
        v[0] = f(x[0]);
    }

    auto fn = [&f](double k) { return f(k); };
    auto dfn = [&f](double k) { return slope(f, k); };

    // Grid points within roundoff of zero carry no usable sign. Each one is
    // resolved locally: a simple crossing if its neighbours disagree in
    // sign, otherwise the critical point of a tangential zero.
    std::vector<char> flat(cells + 1, 0);
    for (std::size_t i = 1; i <= cells; ++i) flat[i] = std::abs(v[i]) <= options.coincidence_tol;

    std::vector<double> roots;
    for (std::size_t i = 1; i <= cells; ++i) {
        if (!flat[i]) continue;
        const double left = x[i - 1];
        const double right = i == cells ? x[i] : x[i + 1];
        if (i == cells || sign_of(v[i - 1]) != sign_of(v[i + 1])) {
            roots.push_back(i == cells ? x[i] : bisect(fn, left, right, options.refine_tol));
        } else if (sign_of(slope(f, left)) != sign_of(slope(f, right))) {
            roots.push_back(bisect(dfn, left, right, options.refine_tol));
        } else {
            roots.push_back(x[i]);
        }
    }

    for (std::size_t i = 0; i < cells; ++i) {
        if (flat[i] || flat[i + 1]) continue;
        if (v[i] * v[i + 1] < 0.0) roots.push_back(bisect(fn, x[i], x[i + 1], options.refine_tol));
    }

    for (std::size_t i = 1; i < cells; ++i) {
        const double a = std::abs(v[i]);
        if (flat[i - 1] || flat[i] || flat[i + 1] || a >= options.tangency_threshold) continue;
        if (sign_of(v[i - 1]) != sign_of(v[i]) || sign_of(v[i + 1]) != sign_of(v[i])) continue;
        if (a > std::abs(v[i - 1]) || a > std::abs(v[i + 1])) continue;

        const double left = x[i - 1];
        const double right = x[i + 1];
        if (sign_of(slope(f, left)) == sign_of(slope(f, right))) continue;
        const double k_star = bisect(dfn, left, right, options.refine_tol);
        const double f_star = f(k_star);
        if (std::abs(f_star) <= options.coincidence_tol) {
            roots.push_back(k_star);
        } else if (sign_of(f_star) != sign_of(v[i])) {
            roots.push_back(bisect(fn, left, k_star, options.refine_tol));
            roots.push_back(bisect(fn, k_star, right, options.refine_tol));
        }
    }

    std::sort(roots.begin(), roots.end());
    const double merge_tol = 10.0 * options.refine_tol;
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double p, double q) { return q - p <= merge_tol; }),
                roots.end());
    std::erase_if(roots, [&](double k) { return k <= lo || k > hi; });
    return roots;
}

OracleReport compare(const RootTable& solver_roots, std::span<const double> oracle_roots,
                     double tol) {
    OracleReport report;
    report.roots.assign(oracle_roots.begin(), oracle_roots.end());
    report.solver_count = solver_roots.roots.size();

    const std::size_t common = std::min(solver_roots.roots.size(), oracle_roots.size());
    for (std::size_t i = 0; i < common; ++i) {
        const double delta = std::abs(solver_roots.roots[i].k - oracle_roots[i]);
        report.matched.push_back({solver_roots.roots[i].index, delta});
        report.max_delta = std::max(report.max_delta, delta);
        if (!report.first_mismatch && !(delta <= tol))
            report.first_mismatch = static_cast<int>(i) + 1;
    }
    if (!report.first_mismatch && solver_roots.roots.size() != oracle_roots.size())
        report.first_mismatch = static_cast<int>(common) + 1;
    report.pass = !report.first_mismatch;
    return report;
}

OracleReport verify(const TrigSpectralFunction& f, const RootTable& solver_roots, double k_max,
                    double tol, const ScanOptions& options) {
    const auto roots = scan_roots(f, 0.0, k_max, options);
    OracleReport report = compare(solver_roots, roots, tol);
    report.scan_step = options.scan_step > 0.0 ? options.scan_step : default_scan_step(f);
    return report;
}

std::string OracleReport::summary() const {
    std::ostringstream os;
    os.precision(17);
    os << "oracle: " << (pass ? "pass" : "fail") << "; solver roots " << solver_count
       << ", oracle roots " << roots.size() << ", scan step " << scan_step
       << ", max |dk| " << max_delta;
    if (first_mismatch) {
        const auto i = static_cast<std::size_t>(*first_mismatch - 1);
        os << "; first mismatch at n = " << *first_mismatch;
        if (i < matched.size()) os << " (|dk| = " << matched[i].delta << ")";
        else os << " (count differs)";
    }
    return os.str();
}

WeylAudit weyl_audit(std::span<const double> roots, double leading_action, double lo, double hi,
                     std::size_t term_count) {
    WeylAudit audit;
    audit.allowance = static_cast<double>(term_count) + 1.0;
    if (!(hi > lo)) return audit;
    audit.expected = leading_action * (hi - lo) / pi;
    audit.actual = std::count_if(roots.begin(), roots.end(),
                                 [&](double k) { return k > lo && k <= hi; });
    audit.deviation = static_cast<double>(audit.actual) - audit.expected;
    audit.pass = std::abs(audit.deviation) <= audit.allowance;
    return audit;
}

std::string WeylAudit::summary() const {
    std::ostringstream os;
    os << "weyl: " << (pass ? "pass" : "fail") << "; expected " << expected << ", actual "
       << actual << ", deviation " << deviation << " (allowed " << allowance << ")";
    return os.str();
}

}  // namespace qgraph::oracle
