#include "stringalg/export.hpp"

#include <sstream>

namespace stringalg {

namespace {

Json node_list(const ARQuiver& q, const std::vector<std::size_t>& nodes) {
    Json a = Json::array();
    for (auto n : nodes) a.push_back(q.label(n));
    return a;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const Presentation& p, const Representation& m) {
    Json dims = Json::object(), maps = Json::object();
    for (std::size_t v = 0; v < p.vertex_count(); ++v) dims[p.vertex_name(v)] = m.dims.at(v);
    for (std::size_t a = 0; a < p.arrow_count(); ++a) maps[p.arrow(a).label] = to_json(m.maps.at(a));
    return Json{{"dims", dims}, {"maps", maps}};
}

Json to_json(const Presentation& p, const MorphismMatrix& f) {
    Json blocks = Json::object();
    for (std::size_t v = 0; v < p.vertex_count(); ++v) blocks[p.vertex_name(v)] = to_json(f.blocks.at(v));
    return blocks;
}

Json to_json(const ValidationReport& r) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) conds.push_back({{"condition", c.id}, {"passed", c.passed}, {"offenders", c.offenders}});
    return Json{{"isStringAlgebra", r.is_string_algebra}, {"conditions", conds}};
}

Json to_json(const Presentation& p, const StringModule& m) {
    return Json{{"word", format_walk(p, m.word)}, {"dimension", m.rep.total_dim()}, {"representation", to_json(p, m.rep)}};
}

Json to_json(const Presentation& p, const AlmostSplitSequence& s) {
    Json middle = Json::array();
    for (std::size_t i = 0; i < s.middle.size(); ++i)
        middle.push_back({{"word", format_walk(p, s.middle[i].word)},
                          {"leftMap", to_json(p, s.left_maps[i])},
                          {"rightMap", to_json(p, s.right_maps[i])}});
    return Json{{"left", format_walk(p, s.left.word)}, {"right", format_walk(p, s.right.word)}, {"middle", middle}};
}

Json to_json(const Presentation& p, const TauOrbit& orbit) {
    Json mods = Json::array();
    for (const auto& m : orbit.modules) mods.push_back(format_walk(p, m.word));
    return Json{{"orbit", mods}, {"stoppedAtProjective", orbit.stopped_at_projective}, {"note", orbit.note}};
}

Json to_json(const Depth& d) { return d.zero ? Json("zero") : Json(d.value); }

Json to_json(const ARQuiver& q) {
    Json nodes = Json::array(), arrows = Json::array(), pairs = Json::array();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& n = q.node(i);
        nodes.push_back({{"id", i},
                         {"word", q.label(i)},
                         {"dimension", n.module.rep.total_dim()},
                         {"projective", n.projective},
                         {"injective", n.injective}});
        if (n.tau) pairs.push_back({{"module", i}, {"tau", *n.tau}});
    }
    for (const auto& a : q.arrows())
        arrows.push_back({{"source", a.source}, {"target", a.target}, {"mono", is_injective(a.map)}, {"epi", is_surjective(a.map)}});
    return Json{{"algebra", q.presentation().name()}, {"nodes", nodes}, {"arrows", arrows}, {"tauPairs", pairs}};
}

Json to_json(const ARQuiver& q, const RadicalProfile& profile) {
    return Json{{"source", q.label(profile.source)}, {"target", q.label(profile.target)}, {"layers", profile.dims}};
}

Json to_json(const ARQuiver& q, const Degree& d) {
    Json j{{"value", d.infinite ? Json("infinite") : Json(d.value)}};
    if (d.witness_node) {
        j["witness"] = {{"module", q.label(*d.witness_node)}, {"map", to_json(q.presentation(), *d.witness_map)}};
    }
    return j;
}

Json to_json(const Presentation& p, const CountingQuiver& c) {
    Json strings = Json::array(), arrows = Json::array();
    for (const auto& w : c.strings) strings.push_back(format_walk(p, w));
    for (auto [a, b] : c.arrows) arrows.push_back({format_walk(p, c.strings[a]), format_walk(p, c.strings[b])});
    return Json{{"side", c.side == CountingSide::Ending ? "ending" : "starting"},
                {"vertex", p.vertex_name(c.vertex)},
                {"strings", strings},
                {"arrows", arrows},
                {"cardinality", c.strings.size()}};
}

Json to_json(const Presentation& p, const PatternMatch& m) {
    Json vs = Json::object(), as = Json::object(), cs = Json::array();
    for (const auto& [name, v] : m.vertices) vs[name] = p.vertex_name(v);
    for (const auto& [name, a] : m.arrows) as[name] = p.arrow(a).label;
    for (const auto& c : m.conditions) cs.push_back({{"condition", c.name}, {"passed", c.passed}});
    Json j{{"pattern", pattern_name(m.id)}, {"vertices", vs}, {"arrows", as}, {"conditions", cs}};
    if (m.id == PatternId::Q3 || m.id == PatternId::Q4) j["m"] = m.m;
    return j;
}

Json to_json(const ARQuiver& q, const AuditReport& r) {
    Json audits = Json::array();
    for (const auto& a : r.audits)
        audits.push_back({{"id", a.id}, {"description", a.description}, {"passed", a.passed}, {"details", a.details}});
    std::size_t samples = 0, counterexamples = 0, violations = 0;
    Json failures = Json::array();
    for (const auto& t : r.triples) {
        samples += t.verdicts.size();
        counterexamples += t.counterexamples.size();
        violations += t.violations.size();
        auto list = t.counterexamples;
        list.insert(list.end(), t.violations.begin(), t.violations.end());
        for (auto s : list) {
            const auto& v = t.verdicts[s];
            Json path = Json::array();
            path.push_back(q.label(q.arrows()[t.path[0]].source));
            for (auto a : t.path) path.push_back(q.label(q.arrows()[a].target));
            failures.push_back({{"path", path}, {"sample", s}, {"composite", to_json(v.composite)},
                                {"firstPair", to_json(v.first_pair)}, {"secondPair", to_json(v.second_pair)}});
        }
    }
    return Json{{"algebra", r.algebra},
                {"seed", r.seed},
                {"samplesPerTriple", r.samples},
                {"nodes", r.nodes},
                {"arrows", r.arrows},
                {"triples", r.triples.size()},
                {"samples", samples},
                {"counterexamples", counterexamples},
                {"corollaryViolations", violations},
                {"failures", failures},
                {"audits", audits},
                {"passed", r.passed()}};
}

Json to_json(const ARQuiver& q, const FamilyWitness& w) {
    const Presentation& p = q.presentation();
    Json chain = Json::array();
    for (std::size_t i = 0; i < w.chain.size(); ++i)
        chain.push_back({{"source", q.label(w.path[i])}, {"target", q.label(w.path[i + 1])}, {"map", to_json(p, w.chain[i])}});
    Json dist = Json::object();
    for (const auto& [name, node] : w.distinguished) dist[name] = q.label(node);
    Json j{{"algebra", p.name()},
           {"n", w.n},
           {"path", node_list(q, w.path)},
           {"chain", chain},
           {"phi", node_list(q, w.phi)},
           {"rho", node_list(q, w.rho)},
           {"tail", node_list(q, w.tail)},
           {"sectionalPath", node_list(q, w.sectional_path)},
           {"distinguished", dist},
           {"expectedDepth", w.expected_depth},
           {"compositeDepth", w.composite_depth},
           {"prefixDepth", w.prefix_depth},
           {"suffixDepth", w.suffix_depth},
           {"verified", w.verified}};
    if (w.m) j["m"] = w.m;
    return j;
}

std::string to_dot(const ARQuiver& q) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(q.presentation().name()) << "\" {\n  rankdir=LR;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& n = q.node(i);
        std::string label = (n.projective ? "|" : "") + q.label(i) + (n.injective ? "|" : "");
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (const auto& a : q.arrows()) out << "  n" << a.source << " -> n" << a.target << ";\n";
    for (std::size_t i = 0; i < q.size(); ++i)
        if (auto t = q.node(i).tau) out << "  n" << i << " -> n" << *t << " [style=dotted, arrowhead=none, constraint=false];\n";
    out << "}\n";
    return out.str();
}

} // namespace stringalg
