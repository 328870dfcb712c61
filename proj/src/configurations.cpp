#include "stringalg/configurations.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace stringalg {

std::string pattern_name(PatternId id) {
    switch (id) {
    case PatternId::Q1: return "Q1";
    case PatternId::Q2: return "Q2";
    case PatternId::Q3: return "Q3";
    case PatternId::Q4: return "Q4";
    case PatternId::LoopOut: return "loopOut";
    case PatternId::LoopIn: return "loopIn";
    }
    return "?";
}

namespace {

bool zero(const Presentation& p, const Path& path) { return p.contains_relation(path); }

Path cat(Path a, const Path& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool nilpotent_loop(const Presentation& p, std::size_t loop) {
    return zero(p, Path(std::max<std::size_t>(2, p.max_relation_length()) + 1, loop));
}

bool same_set(std::vector<std::size_t> a, std::vector<std::size_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// No arrow joins two bound vertices except the pattern's own arrows.
bool full_subquiver(const Presentation& p, const std::vector<std::size_t>& vertices, const std::vector<std::size_t>& arrows) {
    std::set<std::size_t> vs(vertices.begin(), vertices.end()), as(arrows.begin(), arrows.end());
    for (std::size_t a = 0; a < p.arrow_count(); ++a)
        if (vs.count(p.arrow(a).source) && vs.count(p.arrow(a).target) && !as.count(a)) return false;
    return true;
}

bool all_pass(const std::vector<PatternCondition>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const PatternCondition& c) { return c.passed; });
}

// Simple directed paths from `from` to `to` avoiding `skip_arrow` and the vertices in `avoid`.
std::vector<Path> simple_paths(const Presentation& p, std::size_t from, std::size_t to, std::size_t skip_arrow,
                               const std::set<std::size_t>& avoid) {
    std::vector<Path> out;
    Path cur;
    std::set<std::size_t> seen{from};
    std::function<void(std::size_t)> go = [&](std::size_t v) {
        for (auto a : p.arrows_from(v)) {
            if (a == skip_arrow) continue;
            std::size_t w = p.arrow(a).target;
            cur.push_back(a);
            if (w == to)
                out.push_back(cur);
            else if (!seen.count(w) && !avoid.count(w)) {
                seen.insert(w);
                go(w);
                seen.erase(w);
            }
            cur.pop_back();
        }
    };
    if (from != to) go(from);
    return out;
}

void bind_gammas(PatternMatch& m, const Presentation& p, const Path& gamma) {
    for (std::size_t i = 0; i < gamma.size(); ++i) m.arrows.emplace_back("gamma" + std::to_string(i + 1), gamma[i]);
    for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
        m.vertices.emplace_back("c" + std::to_string(i + 1), p.arrow(gamma[i]).target);
}

void loop_patterns(const Presentation& p, std::vector<PatternMatch>& out) {
    for (std::size_t al = 0; al < p.arrow_count(); ++al) {
        const auto& loop = p.arrow(al);
        if (loop.source != loop.target) continue;
        std::size_t a = loop.source;
        // Q1 and loopOut: beta leaves the loop vertex.
        for (auto be : p.arrows_from(a)) {
            if (be == al || p.arrow(be).target == a) continue;
            std::size_t x = p.arrow(be).target;
            {
                PatternMatch m{PatternId::Q1, {{"a", a}, {"x", x}}, {{"alpha", al}, {"beta", be}}, 0, {}};
                bool deltas = std::all_of(p.arrows_from(x).begin(), p.arrows_from(x).end(),
                                          [&](std::size_t d) { return zero(p, {be, d}); });
                m.conditions = {{"alpha nilpotent", nilpotent_loop(p, al)},
                                {"alpha beta in I", zero(p, {al, be})},
                                {"beta delta in I", deltas},
                                {"a has no other arrows", same_set(p.arrows_from(a), {al, be}) && same_set(p.arrows_to(a), {al})},
                                {"x has no other incoming arrows", same_set(p.arrows_to(x), {be})}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
            {
                PatternMatch m{PatternId::LoopOut, {{"1", a}, {"2", x}}, {{"alpha", al}, {"beta", be}}, 0, {}};
                bool lambdas = std::all_of(p.arrows_from(x).begin(), p.arrows_from(x).end(),
                                           [&](std::size_t l) { return zero(p, {be, l}); });
                m.conditions = {{"alpha squared in I", zero(p, {al, al})},
                                {"alpha beta not in I", !zero(p, {al, be})},
                                {"no arrows into 1", same_set(p.arrows_to(a), {al})},
                                {"beta lambda in I", lambdas},
                                {"2 has no other incoming arrows", same_set(p.arrows_to(x), {be})}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
        }
        // Q2 and loopIn: beta enters the loop vertex.
        for (auto be : p.arrows_to(a)) {
            if (be == al || p.arrow(be).source == a) continue;
            std::size_t x = p.arrow(be).source;
            {
                PatternMatch m{PatternId::Q2, {{"x", x}, {"a", a}}, {{"beta", be}, {"alpha", al}}, 0, {}};
                bool deltas = std::all_of(p.arrows_to(x).begin(), p.arrows_to(x).end(),
                                          [&](std::size_t d) { return zero(p, {d, be}); });
                m.conditions = {{"alpha nilpotent", nilpotent_loop(p, al)},
                                {"beta alpha in I", zero(p, {be, al})},
                                {"delta beta in I", deltas},
                                {"a has no other arrows", same_set(p.arrows_to(a), {al, be}) && same_set(p.arrows_from(a), {al})},
                                {"x has no other outgoing arrows", same_set(p.arrows_from(x), {be})}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
            {
                PatternMatch m{PatternId::LoopIn, {{"1", a}, {"2", x}}, {{"alpha", al}, {"beta", be}}, 0, {}};
                bool lambdas = std::all_of(p.arrows_to(x).begin(), p.arrows_to(x).end(),
                                           [&](std::size_t l) { return zero(p, {l, be}); });
                m.conditions = {{"alpha squared in I", zero(p, {al, al})},
                                {"beta alpha not in I", !zero(p, {be, al})},
                                {"no arrows out of 1", same_set(p.arrows_from(a), {al})},
                                {"lambda beta in I", lambdas},
                                {"2 has no other outgoing arrows", same_set(p.arrows_from(x), {be})}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
        }
    }
}

void parallel_patterns(const Presentation& p, std::vector<PatternMatch>& out) {
    // Q3: gamma_1..gamma_m and alpha from 1 to v, then beta : v -> a.
    for (std::size_t be = 0; be < p.arrow_count(); ++be) {
        std::size_t v = p.arrow(be).source, a = p.arrow(be).target;
        if (v == a) continue;
        for (auto al : p.arrows_to(v)) {
            if (al == be) continue;
            std::size_t one = p.arrow(al).source;
            if (one == v || one == a) continue;
            for (const auto& gamma : simple_paths(p, one, v, al, {a})) {
                PatternMatch m{PatternId::Q3, {{"1", one}}, {{"alpha", al}, {"beta", be}}, gamma.size(), {}};
                bind_gammas(m, p, gamma);
                m.vertices.emplace_back("v", v);
                m.vertices.emplace_back("a", a);
                Path gb = cat(gamma, {be});
                bool deltas = std::all_of(p.arrows_from(a).begin(), p.arrows_from(a).end(),
                                          [&](std::size_t d) { return zero(p, cat(gb, {d})); });
                bool lambdas = std::all_of(p.arrows_to(one).begin(), p.arrows_to(one).end(),
                                           [&](std::size_t l) { return zero(p, cat({l}, gamma)); });
                std::vector<std::size_t> vs, as = cat(gamma, {al, be});
                for (auto& [name, id] : m.vertices) vs.push_back(id);
                m.conditions = {{"alpha beta in I", zero(p, {al, be})},
                                {"gamma beta not in I", !zero(p, gb)},
                                {"gamma beta delta in I", deltas},
                                {"lambda gamma in I", lambdas},
                                {"a has no other incoming arrows", same_set(p.arrows_to(a), {be})},
                                {"full subquiver", full_subquiver(p, vs, as)}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
        }
    }
    // Q4: beta : a -> u, then gamma_1..gamma_m and alpha from u to 1.
    for (std::size_t be = 0; be < p.arrow_count(); ++be) {
        std::size_t a = p.arrow(be).source, u = p.arrow(be).target;
        if (u == a) continue;
        for (auto al : p.arrows_from(u)) {
            if (al == be) continue;
            std::size_t one = p.arrow(al).target;
            if (one == u || one == a) continue;
            for (const auto& gamma : simple_paths(p, u, one, al, {a})) {
                PatternMatch m{PatternId::Q4, {{"a", a}, {"u", u}}, {{"beta", be}, {"alpha", al}}, gamma.size(), {}};
                bind_gammas(m, p, gamma);
                m.vertices.emplace_back("1", one);
                Path bg = cat({be}, gamma);
                bool deltas = std::all_of(p.arrows_to(a).begin(), p.arrows_to(a).end(),
                                          [&](std::size_t d) { return zero(p, cat({d}, bg)); });
                bool lambdas = std::all_of(p.arrows_from(one).begin(), p.arrows_from(one).end(),
                                           [&](std::size_t l) { return zero(p, cat(gamma, {l})); });
                std::vector<std::size_t> vs, as = cat(gamma, {al, be});
                for (auto& [name, id] : m.vertices) vs.push_back(id);
                m.conditions = {{"beta alpha in I", zero(p, {be, al})},
                                {"beta gamma not in I", !zero(p, bg)},
                                {"delta beta gamma in I", deltas},
                                {"gamma lambda in I", lambdas},
                                {"a has no other outgoing arrows", same_set(p.arrows_from(a), {be})},
                                {"full subquiver", full_subquiver(p, vs, as)}};
                if (all_pass(m.conditions)) out.push_back(std::move(m));
            }
        }
    }
}

Walk module_word(const Presentation& p, std::size_t v, StandardKind kind) {
    return canonicalize(standard_word(p, v, kind));
}

} // namespace

std::vector<PatternMatch> detect_local_patterns(const Presentation& p) {
    std::vector<PatternMatch> out;
    loop_patterns(p, out);
    parallel_patterns(p, out);
    std::stable_sort(out.begin(), out.end(), [](const PatternMatch& a, const PatternMatch& b) { return a.id < b.id; });
    return out;
}

std::vector<TauArrow> find_tau_arrows(const ARQuiver& quiver) {
    std::vector<TauArrow> out;
    for (std::size_t x = 0; x < quiver.size(); ++x) {
        auto t = quiver.node(x).tau;
        if (t && !quiver.arrows_between(x, *t).empty()) out.push_back({x, *t});
    }
    return out;
}

std::vector<LocalTauArrow> find_tau_arrows(const Presentation& p, const std::vector<Walk>& candidates, const Field& field) {
    std::vector<LocalTauArrow> out;
    for (const auto& c : candidates) {
        Walk m = canonicalize(c);
        auto t = tau_word(p, m);
        if (!t || is_projective_word(p, *t)) continue;
        Walk tm = canonicalize(*t);
        auto seq = ar_sequence(p, realize(p, tm, field), SequenceSide::EndingAt, field);
        for (const auto& mid : seq.middle)
            if (canonicalize(mid.word) == m) {
                out.push_back({m, tm});
                break;
            }
    }
    return out;
}

std::vector<Walk> pattern_candidates(const Presentation& p, const std::vector<PatternMatch>& matches) {
    std::vector<Walk> out;
    auto bound = [](const PatternMatch& m, const std::string& name) {
        for (auto& [n, v] : m.vertices)
            if (n == name) return v;
        throw Error(ErrorCode::Inconsistency, "unbound pattern vertex " + name);
    };
    auto add = [&](Walk w) {
        w = canonicalize(w);
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    };
    auto add_coprojective = [&](std::size_t v) {
        if (auto w = tau_inverse_word(p, module_word(p, v, StandardKind::Projective))) add(*w);
    };
    for (const auto& m : matches) {
        switch (m.id) {
        case PatternId::Q1:
            add(module_word(p, bound(m, "x"), StandardKind::Injective));
            add_coprojective(bound(m, "a"));
            break;
        case PatternId::Q2:
            add(module_word(p, bound(m, "a"), StandardKind::Injective));
            add_coprojective(bound(m, "x"));
            break;
        case PatternId::Q3: add(module_word(p, bound(m, "a"), StandardKind::Injective)); break;
        case PatternId::Q4: add_coprojective(bound(m, "a")); break;
        default: break;
        }
    }
    return out;
}

std::vector<ThreeCycle> find_three_cycles(const ARQuiver& quiver) {
    std::vector<ThreeCycle> out;
    const auto& arrows = quiver.arrows();
    for (std::size_t x = 0; x < quiver.size(); ++x)
        for (auto a1 : quiver.arrows_from(x)) {
            std::size_t y = arrows[a1].target;
            if (y <= x) continue;
            for (auto a2 : quiver.arrows_from(y)) {
                std::size_t z = arrows[a2].target;
                if (z <= x || z == y) continue;
                for (auto a3 : quiver.arrows_from(z))
                    if (arrows[a3].target == x) out.push_back({{x, y, z}, {a1, a2, a3}});
            }
        }
    return out;
}

PathClass path_class(const ARQuiver& quiver, const std::vector<std::size_t>& path) {
    for (auto v : path)
        if (v >= quiver.size()) throw Error(ErrorCode::NodeAbsent, "node index out of range");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (quiver.arrows_between(path[i], path[i + 1]).empty())
            throw Error(ErrorCode::InvalidWalk, "no arrow " + quiver.label(path[i]) + " -> " + quiver.label(path[i + 1]));
    auto tau_is = [&](std::size_t of, std::size_t is) { return quiver.node(of).tau == is; };
    auto presectional = [&](std::size_t first, std::size_t last) {
        for (std::size_t i = first + 1; i < last; ++i)
            if (tau_is(path[i + 1], path[i - 1]) && quiver.arrows_between(path[i - 1], path[i]).size() < 2) return false;
        return true;
    };
    PathClass c;
    const std::size_t n = path.size();
    for (std::size_t j = 2; j < n; ++j)
        if (tau_is(path[j], path[j - 2])) c.sectional = false;
    c.presectional = n < 3 || presectional(0, n - 1);
    if (n >= 3) {
        c.left_almost_presectional = presectional(0, n - 2) && tau_is(path[n - 1], path[n - 3]);
        c.right_almost_presectional = presectional(1, n - 1) && tau_is(path[2], path[0]);
    }
    return c;
}

std::optional<std::size_t> tau_period(const ARQuiver& quiver, std::size_t node) {
    std::size_t cur = node;
    for (std::size_t k = 1; k <= quiver.size(); ++k) {
        auto t = quiver.node(cur).tau;
        if (!t) return std::nullopt;
        if (*t == node) return k;
        cur = *t;
    }
    return std::nullopt;
}

bool AuditReport::passed() const {
    return std::all_of(audits.begin(), audits.end(), [](const AuditEntry& a) { return a.passed; });
}

AuditReport audit_theorems(const Presentation& p, const AuditOptions& options) {
    ARQuiver quiver = knit(p, options.field);
    RadicalStructure radical(quiver);
    return audit_theorems(quiver, radical, options);
}

AuditReport audit_theorems(const ARQuiver& quiver, const RadicalStructure& radical, const AuditOptions& options) {
    const Presentation& p = quiver.presentation();
    const auto& arrows = quiver.arrows();
    const auto& nodes = quiver.nodes();
    AuditReport report;
    report.algebra = p.name();
    report.seed = options.seed;
    report.samples = options.samples;
    report.nodes = quiver.size();
    report.arrows = arrows.size();

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    // Irreducible map plus a random element of the square of the radical.
    auto perturbed = [&](std::size_t a) {
        const auto& arrow = arrows[a];
        Vector v = flatten(arrow.map);
        const Subspace& deep = radical.layer(arrow.source, arrow.target, 2);
        for (const auto& b : deep.basis()) {
            Scalar c = quiver.field().from_int(coeff(rng));
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * b[k];
        }
        return unflatten(v, nodes[arrow.source].module.rep, nodes[arrow.target].module.rep);
    };

    AuditEntry a{"A", "no three irreducibles compose into depth exactly 6 with both pair composites of depth at most 2", true, {}};
    AuditEntry b{"B", "a composite of three irreducibles of depth at least 4 has depth at least 6", true, {}};
    for (std::size_t a1 = 0; a1 < arrows.size(); ++a1)
        for (auto a2 : quiver.arrows_from(arrows[a1].target))
            for (auto a3 : quiver.arrows_from(arrows[a2].target)) {
                TripleReport t;
                t.path = {a1, a2, a3};
                t.samples = options.samples;
                std::size_t x1 = arrows[a1].source, x2 = arrows[a2].source, x3 = arrows[a3].source, x4 = arrows[a3].target;
                for (std::size_t s = 0; s < options.samples; ++s) {
                    MorphismMatrix h1 = perturbed(a1), h2 = perturbed(a2), h3 = perturbed(a3);
                    MorphismMatrix h21 = compose(h2, h1), h32 = compose(h3, h2);
                    TripleVerdict v{radical.depth(x1, x4, compose(h3, h21)), radical.depth(x1, x3, h21), radical.depth(x2, x4, h32)};
                    if (v.composite == Depth{false, 6} && v.first_pair.at_most(2) && v.second_pair.at_most(2))
                        t.counterexamples.push_back(s);
                    if (v.composite.at_least(4) && !v.composite.at_least(6)) t.violations.push_back(s);
                    t.verdicts.push_back(v);
                }
                std::string where = quiver.label(x1) + " -> " + quiver.label(x2) + " -> " + quiver.label(x3) + " -> " + quiver.label(x4);
                if (!t.counterexamples.empty()) {
                    a.passed = false;
                    a.details.push_back(where + ": " + std::to_string(t.counterexamples.size()) + " samples");
                }
                if (!t.violations.empty()) {
                    b.passed = false;
                    b.details.push_back(where + ": " + std::to_string(t.violations.size()) + " samples");
                }
                report.triples.push_back(std::move(t));
            }
    a.details.insert(a.details.begin(), std::to_string(report.triples.size()) + " triples");
    b.details.insert(b.details.begin(), std::to_string(report.triples.size()) + " triples");

    auto cycles = find_three_cycles(quiver);
    AuditEntry c{"C", "every 3-cycle of irreducibles has a monomorphism and an epimorphism", true, {}};
    for (const auto& cy : cycles) {
        bool mono = false, epi = false;
        for (auto ar : cy.arrows) {
            mono = mono || is_injective(arrows[ar].map);
            epi = epi || is_surjective(arrows[ar].map);
        }
        if (!mono || !epi) {
            c.passed = false;
            c.details.push_back(quiver.label(cy.nodes[0]) + " -> " + quiver.label(cy.nodes[1]) + " -> " + quiver.label(cy.nodes[2]));
        }
    }
    c.details.insert(c.details.begin(), std::to_string(cycles.size()) + " cycles");

    auto tau_arrows = find_tau_arrows(quiver);
    AuditEntry d{"D", "a 3-cycle exists exactly when some irreducible M -> tau M exists", cycles.empty() == tau_arrows.empty(), {}};
    d.details.push_back(std::to_string(cycles.size()) + " cycles, " + std::to_string(tau_arrows.size()) + " arrows M -> tau M");

    AuditEntry e{"tau-period", "a tau-stable M with an irreducible M -> tau M is tau-periodic of rank three", true, {}};
    for (const auto& ta : tau_arrows) {
        auto period = tau_period(quiver, ta.module);
        if (!period) continue;
        TauOrbit orbit = tau_orbit(p, nodes[ta.module].module, 3, quiver.field());
        bool back = orbit.modules.size() == 4 && canonicalize(orbit.modules.back().word) == nodes[ta.module].word();
        bool minimal = *period == 3;
        e.details.push_back(quiver.label(ta.module) + ": period " + std::to_string(*period));
        if (!back || !minimal) e.passed = false;
    }
    report.audits = {a, b, c, d, e};
    return report;
}

} // namespace stringalg
