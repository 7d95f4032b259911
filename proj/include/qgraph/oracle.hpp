#pragma once

// Brute-force verification. Nothing in here knows about separators or the
// derivative ladder: roots come from a dense uniform scan of the function
// alone, and the Weyl estimate S0 K / pi audits the counts.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgraph/solver.hpp"
#include "qgraph/trig.hpp"

namespace qgraph::oracle {

/// pi / (40 S0): ten times denser than the half-oscillation guard.
double default_scan_step(const TrigSpectralFunction& f) noexcept;

struct ScanOptions {
    double scan_step = 0.0;             // 0 selects default_scan_step
    double refine_tol = 1e-13;
    double tangency_threshold = 0.05;   // |f| below this at a grid minimum triggers a probe
    double coincidence_tol = 1e-10;     // |f| at the probed minimum that counts as a double root
};

/// Roots of f in (lo, hi]: bisection of every sign-change cell plus a
/// critical-point probe wherever |f| has a shallow grid minimum, which picks
/// up tangential zeros and root pairs closer than one cell.
///
/// Throws Error(invalid_argument) when scan_step exceeds pi / (4 S0).
std::vector<double> scan_roots(const TrigSpectralFunction& f, double lo, double hi,
                               const ScanOptions& options = {});

struct Match {
    int index = 0;  // solver counting index
    double delta = 0.0;
};

struct OracleReport {
    std::vector<double> roots;
    double scan_step = 0.0;
    std::vector<Match> matched;
    bool pass = false;
    std::optional<int> first_mismatch;  // 1-based index of the first disagreement
    double max_delta = 0.0;
    std::size_t solver_count = 0;

    std::string summary() const;
};

/// Pass iff both lists have the same length and agree pairwise within tol.
OracleReport compare(const RootTable& solver_roots, std::span<const double> oracle_roots,
                     double tol);

/// Scans f over (0, k_max] and compares with the solver's table.
OracleReport verify(const TrigSpectralFunction& f, const RootTable& solver_roots, double k_max,
                    double tol, const ScanOptions& options = {});

struct WeylAudit {
    double expected = 0.0;  // S0 (hi - lo) / pi
    long long actual = 0;   // roots in (lo, hi]
    double deviation = 0.0;
    double allowance = 0.0; // N + 1
    bool pass = true;

    std::string summary() const;
};

WeylAudit weyl_audit(std::span<const double> roots, double leading_action, double lo, double hi,
                     std::size_t term_count);

}  // namespace qgraph::oracle
