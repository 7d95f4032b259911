#include "qgraph/spec_file.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
        const YAML::Mark mark = node.Mark();
        throw SpecFileError(source_, mark.line + 1, mark.column + 1, message);
    }

    double number(const YAML::Node& node, const std::string& what) const {
        if (!node.IsScalar()) fail(node, what + " must be a number");
        std::string_view text = node.Scalar();
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
            fail(node, what + ": '" + node.Scalar() + "' is not a finite number");
        return value;
    }

    int integer(const YAML::Node& node, const std::string& what) const {
        if (!node.IsScalar()) fail(node, what + " must be an integer");
        const std::string& text = node.Scalar();
        int value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || end != text.data() + text.size())
            fail(node, what + ": '" + text + "' is not an integer");
        return value;
    }

    template <std::size_t N>
    std::array<double, N> numbers(const YAML::Node& node, const std::string& what) const {
        if (!node.IsSequence() || node.size() != N)
            fail(node, what + " must be a list of " + std::to_string(N) + " numbers");
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i)
            out[i] = number(node[i], what + "[" + std::to_string(i) + "]");
        return out;
    }

    void only_keys(const YAML::Node& map, const std::set<std::string>& allowed,
                   const std::string& where) const {
        for (const auto& entry : map) {
            const auto key = entry.first.as<std::string>();
            if (!allowed.contains(key)) fail(entry.first, "unexpected key '" + key + "' in " + where);
        }
    }

    YAML::Node required(const YAML::Node& map, const std::string& key,
                        const std::string& where) const {
        YAML::Node node = map[key];
        if (!node) fail(map, where + " is missing '" + key + "'");
        return node;
    }

    // Library validation errors carry no position; anchor them at the node
    // that supplied the offending values.
    template <class Build>
    auto anchored(const YAML::Node& node, Build&& build) const {
        try {
            return build();
        } catch (const Error& e) {
            fail(node, e.what());
        }
    }

private:
    std::string source_;
};

SolverOverrides read_solver(const Reader& in, const YAML::Node& node) {
    SolverOverrides s;
    if (!node) return s;
    if (!node.IsMap()) in.fail(node, "'solver' must be a mapping");
    in.only_keys(node, {"k_max", "root_tol", "coincidence_tol", "max_order"}, "solver");
    auto positive = [&](const char* key) -> std::optional<double> {
        if (!node[key]) return std::nullopt;
        const double v = in.number(node[key], key);
        if (!(v > 0.0)) in.fail(node[key], std::string(key) + " must be positive");
        return v;
    };
    s.k_max = positive("k_max");
    s.root_tol = positive("root_tol");
    s.coincidence_tol = positive("coincidence_tol");
    if (node["max_order"]) {
        s.max_order = in.integer(node["max_order"], "max_order");
        if (*s.max_order < 0) in.fail(node["max_order"], "max_order must be nonnegative");
    }
    return s;
}

GraphSpecFile read_star(const Reader& in, const YAML::Node& doc) {
    in.only_keys(doc, {"kind", "solver", "L", "lambda", "alpha", "beta"}, "star spec");
    const bool by_lengths = doc["L"] || doc["lambda"];
    const bool by_scaling = doc["alpha"] || doc["beta"];
    if (by_lengths && by_scaling)
        in.fail(doc, "star spec must give either L + lambda or alpha + beta, not both");
    if (!by_lengths && !by_scaling) in.fail(doc, "star spec needs L + lambda or alpha + beta");

    StarGraphSpec spec = by_lengths
        ? in.anchored(doc, [&] {
              return StarGraphSpec::from_lengths(
                  in.numbers<3>(in.required(doc, "L", "star spec"), "L"),
                  in.numbers<3>(in.required(doc, "lambda", "star spec"), "lambda"));
          })
        : in.anchored(doc, [&] {
              return StarGraphSpec::from_scaling(
                  in.numbers<3>(in.required(doc, "alpha", "star spec"), "alpha"),
                  in.numbers<3>(in.required(doc, "beta", "star spec"), "beta"));
          });
    auto f = in.anchored(doc, [&] { return build_star(spec); });
    return {GraphKind::star, std::move(f), spec, std::nullopt, read_solver(in, doc["solver"])};
}

GraphSpecFile read_chain(const Reader& in, const YAML::Node& doc) {
    in.only_keys(doc, {"kind", "solver", "actions", "beta"}, "chain spec");
    const auto actions = in.numbers<4>(in.required(doc, "actions", "chain spec"), "actions");
    const auto beta = in.numbers<3>(in.required(doc, "beta", "chain spec"), "beta");
    ChainGraphSpec spec = in.anchored(doc, [&] { return ChainGraphSpec(actions, beta); });
    auto f = in.anchored(doc, [&] { return build_chain(spec); });
    return {GraphKind::chain, std::move(f), std::nullopt, spec, read_solver(in, doc["solver"])};
}

GraphSpecFile read_trig(const Reader& in, const YAML::Node& doc) {
    in.only_keys(doc, {"kind", "solver", "leading", "terms"}, "trig spec");
    const YAML::Node lead = in.required(doc, "leading", "trig spec");
    if (!lead.IsMap()) in.fail(lead, "'leading' must be a mapping with S0 and gamma0");
    in.only_keys(lead, {"S0", "gamma0"}, "leading");
    LeadingTerm leading{in.number(in.required(lead, "S0", "leading"), "S0"),
                        lead["gamma0"] ? in.number(lead["gamma0"], "gamma0") : 0.0};

    std::vector<CosineTerm> terms;
    if (const YAML::Node list = doc["terms"]) {
        if (!list.IsSequence()) in.fail(list, "'terms' must be a list");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const YAML::Node t = list[i];
            const std::string where = "terms[" + std::to_string(i) + "]";
            if (!t.IsMap()) in.fail(t, where + " must be a mapping with S, gamma, a");
            in.only_keys(t, {"S", "gamma", "a"}, where);
            terms.push_back({in.number(in.required(t, "S", where), where + ".S"),
                             t["gamma"] ? in.number(t["gamma"], where + ".gamma") : 0.0,
                             in.number(in.required(t, "a", where), where + ".a")});
        }
    }
    auto f = in.anchored(doc, [&] { return normalize(terms, leading); });
    return {GraphKind::trig, std::move(f), std::nullopt, std::nullopt,
            read_solver(in, doc["solver"])};
}

}  // namespace

const char* to_string(GraphKind kind) noexcept {
    switch (kind) {
        case GraphKind::star: return "star";
        case GraphKind::chain: return "chain";
        case GraphKind::trig: return "trig";
    }
    return "unknown";
}

SolverConfig SolverOverrides::apply(SolverConfig base) const {
    if (k_max) base.k_max = *k_max;
    if (root_tol) base.root_tol = *root_tol;
    if (coincidence_tol) base.coincidence_tol = *coincidence_tol;
    if (max_order) base.max_order = *max_order;
    return base;
}

SpecFileError::SpecFileError(const std::string& source, int line, int column,
                             const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

GraphSpecFile parse_graph_spec(std::string_view text, const std::string& source) {
    YAML::Node doc;
    try {
        doc = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw SpecFileError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
    const Reader in(source);
    if (!doc.IsMap()) throw SpecFileError(source, 1, 1, "spec must be a mapping with a 'kind' key");

    const YAML::Node kind = in.required(doc, "kind", "spec");
    if (!kind.IsScalar()) in.fail(kind, "'kind' must be one of star, chain, trig");
    const std::string& name = kind.Scalar();
    if (name == "star") return read_star(in, doc);
    if (name == "chain") return read_chain(in, doc);
    if (name == "trig") return read_trig(in, doc);
    in.fail(kind, "unknown kind '" + name + "' (expected star, chain or trig)");
}

GraphSpecFile load_graph_spec(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw SpecFileError(path.string(), 0, 0, "cannot open file");
    std::ostringstream text;
    text << file.rdbuf();
    return parse_graph_spec(text.str(), path.string());
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

std::string format_full(double value) {
    std::array<char, 64> buf{};
    const auto result =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), result.ptr);
}

std::string emit_trig_spec(const TrigSpectralFunction& f, const SolverOverrides& solver) {
    std::string out = "kind: trig\n";
    out += "leading: {S0: " + format_number(f.leading_action()) +
           ", gamma0: " + format_number(f.leading_phase()) + "}\n";
    if (f.term_count() == 0) {
        out += "terms: []\n";
    } else {
        out += "terms:\n";
        for (const auto& t : f.terms()) {
            out += "  - {S: " + format_number(t.action) + ", gamma: " + format_number(t.phase) +
                   ", a: " + format_number(t.amplitude) + "}\n";
        }
    }
    if (solver.k_max || solver.root_tol || solver.coincidence_tol || solver.max_order) {
        out += "solver:\n";
        if (solver.k_max) out += "  k_max: " + format_number(*solver.k_max) + "\n";
        if (solver.root_tol) out += "  root_tol: " + format_number(*solver.root_tol) + "\n";
        if (solver.coincidence_tol)
            out += "  coincidence_tol: " + format_number(*solver.coincidence_tol) + "\n";
        if (solver.max_order) out += "  max_order: " + std::to_string(*solver.max_order) + "\n";
    }
    return out;
}

}  // namespace qgraph
