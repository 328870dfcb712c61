// Command-line front end: stringalg <subcommand> [input] [flags]
#include "stringalg/configurations.hpp"
#include "stringalg/errors.hpp"
#include "stringalg/export.hpp"
#include "stringalg/families.hpp"
#include "stringalg/radical.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace stringalg;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kAuditFailure = 2;
constexpr int kUsageError = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string family;
    std::size_t n = 0;
    std::size_t m = 0;
    bool json = false;
    bool dot = false;
    std::uint64_t seed = 0;
    std::size_t samples = 32;
    std::optional<std::size_t> max_len;
    std::uint32_t characteristic = 0;
    std::string output;

    // Subcommand arguments.
    std::string word;
    std::string source;
    std::string target;
    std::string path;
    std::string side;
    std::string vertex;
    std::size_t steps = 3;
    bool inverse = false;
};

Field field_of(const Options& o) { return o.characteristic == 0 ? Field::rationals() : Field::prime(o.characteristic); }

FamilySpec family_of(const Options& o) {
    Family f = parse_family(o.family);
    if (f == Family::W) {
        if (o.n == 0) throw UsageError("--family W needs --n");
        return make_family(f, {o.n});
    }
    if (o.n == 0 || o.m == 0) throw UsageError("--family " + o.family + " needs --m and --n");
    return make_family(f, {o.m, o.n});
}

Presentation load(const Options& o) {
    if (o.input.empty() == o.family.empty()) throw UsageError("give exactly one input: a presentation file or --family");
    if (!o.family.empty()) return family_of(o).presentation;
    std::ifstream in(o.input);
    if (!in) throw Error(ErrorCode::Syntax, "cannot read " + o.input);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path out(o.output);
    if (out.is_relative())
        if (const char* dir = std::getenv("STRINGALG_OUTPUT_DIR"); dir && *dir) out = std::filesystem::path(dir) / out;
    std::ofstream f(out);
    if (!f) throw Error(ErrorCode::Syntax, "cannot write " + out.string());
    f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

std::string depth_text(const Depth& d) { return d.zero ? "zero" : std::to_string(d.value); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::size_t node(const ARQuiver& q, const std::string& word) {
    if (word.empty()) throw UsageError("missing module word");
    return q.index_of(canonicalize(parse_walk(q.presentation(), word)));
}

StringModule module_of(const Presentation& p, const std::string& word, const Field& f) {
    if (word.empty()) throw UsageError("missing module word");
    Walk w = parse_walk(p, word);
    if (!is_string(p, w)) throw Error(ErrorCode::InvalidWalk, "'" + word + "' is not a string: " + check_string(p, w).reason);
    return realize(p, canonicalize(w), f);
}

int cmd_validate(const Options& o) {
    Presentation p = load(o);
    const auto& r = p.validation();
    PathCount c = nonzero_path_count(p);
    if (o.json) {
        Json j = to_json(r);
        j["algebra"] = p.name();
        j["pathCount"] = c.infinite ? Json("infinite") : Json(c.count);
        emit(o, j);
        return kOk;
    }
    std::ostringstream out;
    out << p.name() << ": " << (r.is_string_algebra ? "string algebra" : "not a string algebra") << "\n";
    for (const auto& cond : r.conditions) {
        out << "  (" << cond.id << ") " << (cond.passed ? "pass" : "fail");
        for (const auto& off : cond.offenders) out << " " << off;
        out << "\n";
    }
    out << "  nonzero paths: " << (c.infinite ? "infinite" : std::to_string(c.count)) << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_strings(const Options& o) {
    Presentation p = load(o);
    auto strings = enumerate_strings(p, o.max_len);
    if (o.json) {
        Json a = Json::array();
        for (const auto& w : strings) a.push_back(format_walk(p, w));
        emit(o, Json{{"algebra", p.name()}, {"count", strings.size()}, {"strings", a}});
        return kOk;
    }
    std::ostringstream out;
    for (const auto& w : strings) out << format_walk(p, w) << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_bands(const Options& o) {
    Presentation p = load(o);
    auto bands = find_bands(p, o.max_len.value_or(2 * p.arrow_count() + 2));
    if (o.json) {
        Json a = Json::array();
        for (const auto& w : bands) a.push_back(format_walk(p, w));
        emit(o, Json{{"algebra", p.name()}, {"bands", a}});
        return kOk;
    }
    std::ostringstream out;
    for (const auto& w : bands) out << format_walk(p, w) << "\n";
    if (bands.empty()) out << "no bands\n";
    emit(o, out.str());
    return kOk;
}

int cmd_module(const Options& o) {
    Presentation p = load(o);
    StringModule m = module_of(p, o.word, field_of(o));
    Json j = to_json(p, m);
    j["flags"] = [&] {
        StringFlags f = string_flags(p, m.word);
        return Json{{"startsInDeep", f.starts_in_deep}, {"startsOnPeak", f.starts_on_peak},
                    {"endsInDeep", f.ends_in_deep},     {"endsOnPeak", f.ends_on_peak},
                    {"isDirect", f.is_direct},          {"isInverse", f.is_inverse}};
    }();
    if (o.json) {
        emit(o, j);
        return kOk;
    }
    std::ostringstream out;
    out << "M(" << format_walk(p, m.word) << "), dimension " << m.rep.total_dim() << "\n  dims:";
    for (std::size_t v = 0; v < p.vertex_count(); ++v) out << " " << p.vertex_name(v) << "=" << m.rep.dims[v];
    out << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_tau(const Options& o) {
    Presentation p = load(o);
    Field f = field_of(o);
    StringModule m = module_of(p, o.word, f);
    StringModule t = o.inverse ? tau_inverse(p, m, f) : tau(p, m, f);
    bool agrees = o.inverse ? is_isomorphic(p, tau_oracle(p, t.rep), m.rep) : is_isomorphic(p, tau_oracle(p, m.rep), t.rep);
    if (!agrees) throw Error(ErrorCode::Inconsistency, "surgery and DTr disagree");
    if (o.json) {
        emit(o, Json{{"module", format_walk(p, m.word)},
                     {o.inverse ? "tauInverse" : "tau", format_walk(p, t.word)},
                     {"oracleAgrees", agrees}});
        return kOk;
    }
    emit(o, std::string(o.inverse ? "tau^-1 " : "tau ") + "M(" + format_walk(p, m.word) + ") = M(" + format_walk(p, t.word) +
                ")  [DTr agrees]\n");
    return kOk;
}

int cmd_tau_orbit(const Options& o) {
    Presentation p = load(o);
    Field f = field_of(o);
    TauOrbit orbit = tau_orbit(p, module_of(p, o.word, f), o.steps, f);
    if (o.json) {
        emit(o, to_json(p, orbit));
        return kOk;
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < orbit.modules.size(); ++i)
        out << "tau^" << i << ": M(" << format_walk(p, orbit.modules[i].word) << ")\n";
    if (!orbit.note.empty()) out << orbit.note << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_knit(const Options& o) {
    Presentation p = load(o);
    ARQuiver q = knit(p, field_of(o));
    if (o.dot) {
        emit(o, to_dot(q));
        return kOk;
    }
    if (o.json) {
        emit(o, to_json(q));
        return kOk;
    }
    std::ostringstream out;
    out << p.name() << ": " << q.size() << " modules, " << q.arrows().size() << " irreducible arrows\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& n = q.node(i);
        out << "  [" << i << "] M(" << q.label(i) << ")" << (n.projective ? " P" : "") << (n.injective ? " I" : "");
        if (n.tau) out << "  tau = [" << *n.tau << "]";
        out << "\n";
    }
    for (const auto& a : q.arrows()) out << "  " << q.label(a.source) << " -> " << q.label(a.target) << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_hom(const Options& o) {
    Presentation p = load(o);
    Field f = field_of(o);
    StringModule x = module_of(p, o.source, f), y = module_of(p, o.target, f);
    HomBasis h = hom_basis(p, x.rep, y.rep);
    if (o.json) {
        Json basis = Json::array();
        for (const auto& b : h.basis) basis.push_back(to_json(p, b));
        emit(o, Json{{"source", format_walk(p, x.word)}, {"target", format_walk(p, y.word)}, {"dimension", h.dimension()}, {"basis", basis}});
        return kOk;
    }
    emit(o, "dim Hom(M(" + format_walk(p, x.word) + "), M(" + format_walk(p, y.word) + ")) = " + std::to_string(h.dimension()) + "\n");
    return kOk;
}

int cmd_radical_profile(const Options& o) {
    Presentation p = load(o);
    ARQuiver q = knit(p, field_of(o));
    RadicalStructure r(q);
    std::vector<RadicalProfile> profiles;
    if (!o.source.empty() || !o.target.empty()) {
        profiles.push_back(r.profile(node(q, o.source), node(q, o.target)));
    } else {
        for (std::size_t x = 0; x < q.size(); ++x)
            for (std::size_t y = 0; y < q.size(); ++y)
                if (r.hom(x, y).dimension() > 0) profiles.push_back(r.profile(x, y));
    }
    if (o.json) {
        Json a = Json::array();
        for (const auto& pr : profiles) a.push_back(to_json(q, pr));
        emit(o, Json{{"algebra", p.name()}, {"nilpotency", r.nilpotency()}, {"profiles", a}});
        return kOk;
    }
    std::ostringstream out;
    out << "radical nilpotency " << r.nilpotency() << "\n";
    for (const auto& pr : profiles) {
        out << "  (" << q.label(pr.source) << ", " << q.label(pr.target) << "):";
        for (auto d : pr.dims) out << " " << d;
        out << "\n";
    }
    emit(o, out.str());
    return kOk;
}

// Composite of the irreducible arrow maps along a ';'-separated node path.
std::pair<std::vector<std::size_t>, MorphismMatrix> path_morphism(const ARQuiver& q, const std::string& spec) {
    std::vector<std::size_t> nodes;
    for (const auto& w : split(spec, ';')) nodes.push_back(node(q, w));
    if (nodes.size() < 2) throw UsageError("--path needs at least two modules separated by ';'");
    std::vector<MorphismMatrix> chain;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        auto between = q.arrows_between(nodes[i], nodes[i + 1]);
        if (between.empty()) throw Error(ErrorCode::InvalidWalk, "no irreducible arrow " + q.label(nodes[i]) + " -> " + q.label(nodes[i + 1]));
        chain.push_back(q.arrows()[between.front()].map);
    }
    return {nodes, compose_chain(chain)};
}

int cmd_depth(const Options& o) {
    Presentation p = load(o);
    ARQuiver q = knit(p, field_of(o));
    RadicalStructure r(q);
    auto [nodes, f] = path_morphism(q, o.path);
    Depth d = r.depth(nodes.front(), nodes.back(), f);
    if (o.json) {
        Json path = Json::array();
        for (auto n : nodes) path.push_back(q.label(n));
        emit(o, Json{{"path", path}, {"depth", to_json(d)}});
        return kOk;
    }
    emit(o, "depth " + depth_text(d) + "\n");
    return kOk;
}

int cmd_degree(const Options& o) {
    Presentation p = load(o);
    ARQuiver q = knit(p, field_of(o));
    RadicalStructure r(q);
    std::size_t x = node(q, o.source), y = node(q, o.target);
    auto between = q.arrows_between(x, y);
    if (between.empty()) throw Error(ErrorCode::NotIrreducible, "no irreducible arrow " + q.label(x) + " -> " + q.label(y));
    if (o.side != "left" && o.side != "right") throw UsageError("--side must be left or right");
    DegreeSide side = o.side == "left" ? DegreeSide::Left : DegreeSide::Right;
    Degree d = r.degree(x, y, q.arrows()[between.front()].map, side, o.max_len);
    if (o.json) {
        Json j = to_json(q, d);
        j["source"] = q.label(x);
        j["target"] = q.label(y);
        j["side"] = o.side;
        emit(o, j);
        return kOk;
    }
    std::string value = d.infinite ? "infinite" : std::to_string(d.value);
    std::string text = (side == DegreeSide::Left ? "d_l = " : "d_r = ") + value;
    if (d.witness_node) text += "  (witness through M(" + q.label(*d.witness_node) + "))";
    emit(o, text + "\n");
    return kOk;
}

int cmd_cg_quiver(const Options& o) {
    Presentation p = load(o);
    if (o.side != "ending" && o.side != "starting") throw UsageError("--side must be ending or starting");
    CountingQuiver c = cg_quiver(p, p.vertex(o.vertex), o.side == "ending" ? CountingSide::Ending : CountingSide::Starting, o.max_len);
    if (o.json) {
        Json j = to_json(p, c);
        j["degree"] = c.strings.size() - 1;
        emit(o, j);
        return kOk;
    }
    std::ostringstream out;
    out << c.strings.size() << " vertices, degree " << c.strings.size() - 1 << "\n";
    for (const auto& w : c.strings) out << "  " << format_walk(p, w) << "\n";
    for (auto [a, b] : c.arrows) out << "  " << format_walk(p, c.strings[a]) << " -> " << format_walk(p, c.strings[b]) << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_detect(const Options& o) {
    Presentation p = load(o);
    auto matches = detect_local_patterns(p);
    if (o.json) {
        Json a = Json::array();
        for (const auto& m : matches) a.push_back(to_json(p, m));
        emit(o, Json{{"algebra", p.name()}, {"matches", a}});
        return kOk;
    }
    std::ostringstream out;
    for (const auto& m : matches) {
        out << pattern_name(m.id);
        if (m.id == PatternId::Q3 || m.id == PatternId::Q4) out << " (m=" << m.m << ")";
        for (const auto& [name, v] : m.vertices) out << " " << name << "=" << p.vertex_name(v);
        out << "\n";
    }
    if (matches.empty()) out << "no patterns\n";
    emit(o, out.str());
    return kOk;
}

int cmd_audit(const Options& o) {
    Presentation p = load(o);
    ARQuiver q = knit(p, field_of(o));
    RadicalStructure r(q);
    AuditReport report = audit_theorems(q, r, {o.samples, o.seed, field_of(o)});
    if (o.json) {
        emit(o, to_json(q, report));
    } else {
        std::ostringstream out;
        out << p.name() << ": " << report.triples.size() << " triples x " << report.samples << " samples (seed " << report.seed << ")\n";
        for (const auto& a : report.audits) {
            out << "  " << a.id << " " << (a.passed ? "pass" : "FAIL") << "  " << a.description << "\n";
            for (const auto& d : a.details) out << "      " << d << "\n";
        }
        emit(o, out.str());
    }
    return report.passed() ? kOk : kAuditFailure;
}

int cmd_family(const Options& o) {
    if (o.family.empty()) throw UsageError("family needs --family");
    FamilySpec spec = family_of(o);
    emit(o, serialize(spec.presentation));
    return kOk;
}

int cmd_witness(const Options& o) {
    if (o.family.empty()) throw UsageError("witness needs --family");
    FamilySpec spec = family_of(o);
    ARQuiver q = knit(spec.presentation, field_of(o));
    RadicalStructure r(q);
    FamilyWitness w = witness(spec, q, r);
    if (o.json) {
        emit(o, to_json(q, w));
        return kOk;
    }
    std::ostringstream out;
    out << spec.presentation.name() << ": " << w.chain.size() << " irreducibles, composite depth " << w.composite_depth
        << " (expected " << w.expected_depth << ")\n  path:";
    for (auto n : w.path) out << " [" << q.label(n) << "]";
    out << "\n  prefix depth " << w.prefix_depth << ", suffix depth " << w.suffix_depth << ", verified "
        << (w.verified ? "yes" : "no") << "\n";
    emit(o, out.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"String algebra toolkit: strings, AR quivers, radical depths and degrees"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_input = true) {
        if (with_input) sub->add_option("input", o.input, "Presentation file");
        sub->add_option("--family", o.family, "Family W, U or V instead of a file");
        sub->add_option("--n", o.n, "Family parameter n");
        sub->add_option("--m", o.m, "Family parameter m");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_option("--char", o.characteristic, "Field characteristic (0 or a prime)");
        sub->add_option("-o,--output", o.output, "Output file");
    };

    std::vector<std::pair<CLI::App*, std::function<int(const Options&)>>> commands;
    auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> run) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        commands.emplace_back(sub, std::move(run));
        return sub;
    };

    add("validate", "Check the string algebra conditions", cmd_validate);
    add("strings", "List canonical strings", cmd_strings)->add_option("--max-len", o.max_len, "Length bound");
    add("bands", "Search for bands", cmd_bands)->add_option("--max-len", o.max_len, "Length bound");
    add("module", "Representation of a string module", cmd_module)->add_option("--word", o.word, "String")->required();
    {
        auto* sub = add("tau", "Auslander-Reiten translate", cmd_tau);
        sub->add_option("--word", o.word, "String")->required();
        sub->add_flag("--inverse", o.inverse, "Inverse translate");
    }
    {
        auto* sub = add("tau-orbit", "Iterate the translate", cmd_tau_orbit);
        sub->add_option("--word", o.word, "String")->required();
        sub->add_option("--steps", o.steps, "Number of steps");
    }
    add("knit", "Knit the Auslander-Reiten quiver", cmd_knit)->add_flag("--dot", o.dot, "DOT output");
    {
        auto* sub = add("hom", "Hom space between string modules", cmd_hom);
        sub->add_option("--source", o.source, "Source string")->required();
        sub->add_option("--target", o.target, "Target string")->required();
    }
    {
        auto* sub = add("radical-profile", "Layer dimensions of the radical filtration", cmd_radical_profile);
        sub->add_option("--source", o.source, "Source string");
        sub->add_option("--target", o.target, "Target string");
    }
    add("depth", "Radical depth of a composite of irreducibles", cmd_depth)
        ->add_option("--path", o.path, "Modules separated by ';'")
        ->required();
    {
        auto* sub = add("degree", "Left or right degree of an irreducible arrow", cmd_degree);
        sub->add_option("--source", o.source, "Source string")->required();
        sub->add_option("--target", o.target, "Target string")->required();
        sub->add_option("--side", o.side, "left or right")->required()->check(CLI::IsMember({"left", "right"}));
        sub->add_option("--max-len", o.max_len, "Layer bound");
    }
    {
        auto* sub = add("cg-quiver", "Counting quiver at a vertex", cmd_cg_quiver);
        sub->add_option("--vertex", o.vertex, "Vertex")->required();
        sub->add_option("--side", o.side, "ending or starting")->required()->check(CLI::IsMember({"ending", "starting"}));
        sub->add_option("--max-len", o.max_len, "Length bound");
    }
    add("detect", "Detect local quiver patterns", cmd_detect);
    {
        auto* sub = add("audit", "Audit the composition theorems", cmd_audit);
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--samples", o.samples, "Perturbation samples per triple");
    }
    add("family", "Print a family presentation", cmd_family);
    add("witness", "Build and verify a family witness", cmd_witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }
    try {
        for (auto& [sub, run] : commands)
            if (sub->parsed()) return run(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error [" << code_name(e.code()) << "]: " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}
