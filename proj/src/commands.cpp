#include "qgraph/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "qgraph/error.hpp"
#include "qgraph/oracle.hpp"
#include "qgraph/spec_file.hpp"

namespace qgraph::cli {

namespace {

constexpr double default_verify_tol = 1e-9;
constexpr int weyl_checkpoints = 10;

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::invalid_argument ? exit_usage : exit_solver;
}

// Loads the graph and resolves the solver config: flags override the file,
// the file overrides the defaults.
struct Loaded {
    GraphSpecFile spec;
    SolverConfig config;
};

Loaded load(const CommonOptions& options) {
    GraphSpecFile spec = load_graph_spec(options.graph_path);
    SolverConfig config = spec.solver.apply({});
    if (options.k_max) config.k_max = *options.k_max;
    if (options.coincidence_tol) config.coincidence_tol = *options.coincidence_tol;
    if (options.max_order) config.max_order = *options.max_order;
    config.threads = options.threads;
    return {std::move(spec), config};
}

// Wraps a command body with the shared error-to-exit-status mapping.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const SpecFileError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SeparatorFailure& e) {
        err << "error: " << e.what() << "\n";
        err << "interval: level " << e.level() << " (" << format_full(e.lo()) << ", "
            << format_full(e.hi()) << ")\n";
        return exit_solver;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

bool require_k_max(const SolverConfig& config, std::ostream& err) {
    if (config.k_max > 0.0) return true;
    err << "error: no spectral window; pass --kmax or set solver.k_max in the graph file\n";
    return false;
}

void write_table(const Spectrum& spectrum, std::ostream& out) {
    out << "n,k,E,kind\n";
    for (const auto& r : spectrum.ground().roots) {
        out << r.index << ',' << format_full(r.k) << ',' << format_full(r.k * r.k) << ','
            << to_string(r.kind) << '\n';
    }
}

}  // namespace

int cmd_solve(const CommonOptions& options, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto [spec, config] = load(options);
        if (options.tol) config.root_tol = *options.tol;
        if (!require_k_max(config, err)) return exit_usage;

        const auto start = std::chrono::steady_clock::now();
        const Spectrum spectrum = solve_ladder(spec.function, config);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        if (out_path) {
            std::ofstream file(*out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot write " << *out_path << "\n";
                return exit_usage;
            }
            write_table(spectrum, file);
        } else {
            write_table(spectrum, out);
        }
        err << "order M = " << spectrum.order << ", roots = " << spectrum.ground().roots.size()
            << ", window = (0, " << format_number(config.k_max) << "], time = " << elapsed.count()
            << " s\n";
        return exit_ok;
    });
}

int cmd_order(const CommonOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto [spec, config] = load(options);
        const DerivativeLadder ladder = build_ladder(spec.function, config.max_order);
        out << "M = " << ladder.order() << "; sums: ";
        for (int m = 0; m <= ladder.order(); ++m) {
            if (m > 0) out << ", ";
            out << format_number(regularity_sum(ladder.level(m)));
        }
        out << "\n";
        return exit_ok;
    });
}

int cmd_verify(const CommonOptions& options, std::ostream& out, std::ostream& err,
               const FaultHook& fault) {
    return guarded(err, [&] {
        auto [spec, config] = load(options);
        if (!require_k_max(config, err)) return exit_usage;
        const double tol = options.tol.value_or(default_verify_tol);

        const Spectrum spectrum = solve_ladder(spec.function, config);
        RootTable solved = spectrum.ground();
        if (fault) fault(solved);

        oracle::ScanOptions scan;
        scan.coincidence_tol = config.coincidence_tol;
        const oracle::OracleReport report =
            oracle::verify(spec.function, solved, config.k_max, tol, scan);

        const auto ks = solved.positions_with_multiplicity();
        oracle::WeylAudit worst;
        bool weyl_ok = true;
        for (int i = 1; i <= weyl_checkpoints; ++i) {
            const double K = config.k_max * i / weyl_checkpoints;
            const auto audit = oracle::weyl_audit(ks, spec.function.leading_action(), 0.0, K,
                                                  spec.function.term_count());
            if (i == 1 || std::abs(audit.deviation) > std::abs(worst.deviation)) worst = audit;
            weyl_ok = weyl_ok && audit.pass;
        }

        out << "order M = " << spectrum.order << "\n";
        out << report.summary() << "\n";
        out << worst.summary() << " [worst of " << weyl_checkpoints << " checkpoints]\n";
        const bool pass = report.pass && weyl_ok;
        out << (pass ? "PASS" : "FAIL") << "\n";
        if (!report.pass && report.first_mismatch)
            err << "first disagreement at n = " << *report.first_mismatch << "\n";
        return pass ? exit_ok : exit_mismatch;
    });
}

int cmd_eval(const CommonOptions& options, std::span<const double> ks,
             const std::optional<EvalGrid>& grid, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto [spec, config] = load(options);
        std::vector<double> points(ks.begin(), ks.end());
        if (grid) {
            if (!(grid->step > 0.0) || !(grid->hi >= grid->lo)) {
                err << "error: grid needs lo <= hi and a positive step\n";
                return exit_usage;
            }
            const auto count = std::llround((grid->hi - grid->lo) / grid->step);
            for (long long i = 0; i <= count; ++i)
                points.push_back(grid->lo + static_cast<double>(i) * grid->step);
        }
        if (points.empty()) {
            err << "error: nothing to evaluate; pass --k or --grid\n";
            return exit_usage;
        }

        const DerivativeLadder ladder = build_ladder(spec.function, config.max_order);
        out << "k";
        for (int m = 0; m <= ladder.order(); ++m) out << ",g" << m;
        out << "\n";
        for (double k : points) {
            out << format_full(k);
            for (const auto& level : ladder.levels()) out << ',' << format_full(level(k));
            out << "\n";
        }
        err << "order M = " << ladder.order() << ", rows = " << points.size() << "\n";
        return exit_ok;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explicit spectra of scaling quantum graphs", "qgraph"};
    app.require_subcommand(1);

    CommonOptions options;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", options.graph_path, "Graph spec file (YAML)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--kmax", options.k_max, "Upper end of the window (0, kmax]");
        cmd->add_option("--coincidence-tol", options.coincidence_tol,
                        "Separator coincidence threshold (relative)");
        cmd->add_option("--max-order", options.max_order, "Cap on the ladder order");
        cmd->add_option("--threads", options.threads, "Worker threads per ladder level")
            ->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "Spectrum table n,k,E,kind");
    add_common(solve);
    std::optional<std::string> out_path;
    solve->add_option("--out", out_path, "Write the table here instead of stdout");
    solve->add_option("--tol", options.tol, "Root tolerance (default 1e-12)");

    auto* order = app.add_subcommand("order", "Ladder order and regularity sums");
    add_common(order);

    auto* verify = app.add_subcommand("verify", "Compare solver and brute-force oracle");
    add_common(verify);
    verify->add_option("--tol", options.tol, "Pairwise agreement tolerance (default 1e-9)");

    auto* eval = app.add_subcommand("eval", "Evaluate the ladder levels g0..gM");
    add_common(eval);
    std::vector<double> ks;
    std::vector<double> grid_values;
    eval->add_option("--k", ks, "Points to evaluate (repeatable, or comma separated)")
        ->delimiter(',');
    eval->add_option("--grid", grid_values, "Uniform grid LO HI STEP")->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    if (*solve) return cmd_solve(options, out_path, out, err);
    if (*order) return cmd_order(options, out, err);
    if (*verify) return cmd_verify(options, out, err);
    std::optional<EvalGrid> grid;
    if (grid_values.size() == 3) grid = EvalGrid{grid_values[0], grid_values[1], grid_values[2]};
    return cmd_eval(options, ks, grid, out, err);
}

}  // namespace qgraph::cli
