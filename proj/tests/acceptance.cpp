// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include "fixtures.hpp"
#include "stringalg/configurations.hpp"
#include "stringalg/errors.hpp"
#include "stringalg/families.hpp"
#include "stringalg/radical.hpp"
#include "stringalg/strings.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace stringalg;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    template <typename... Args>
    void expect(bool ok, Args&&... what) {
        if (ok) return;
        std::ostringstream s;
        (s << ... << what);
        failures.push_back(s.str());
    }
    template <typename... Args>
    void note(Args&&... what) {
        std::ostringstream s;
        (s << ... << what);
        notes.push_back(s.str());
    }
};

struct Knitted {
    FamilySpec spec;
    ARQuiver q;
    RadicalStructure r;

    explicit Knitted(FamilySpec s) : spec(std::move(s)), q(knit(spec.presentation)), r(q) {}
    const Presentation& p() const { return spec.presentation; }
};

// Knitted families are shared between criteria.
const Knitted& family(Family f, std::vector<std::size_t> params) {
    static std::map<std::pair<Family, std::vector<std::size_t>>, std::unique_ptr<Knitted>> cache;
    auto& slot = cache[{f, params}];
    if (!slot) slot = std::make_unique<Knitted>(make_family(f, params));
    return *slot;
}

std::string text(const Depth& d) { return d.zero ? "zero" : std::to_string(d.value); }

Depth chain_depth(const Knitted& k, const FamilyWitness& w, std::size_t from, std::size_t to) {
    std::vector<MorphismMatrix> part(w.chain.begin() + static_cast<std::ptrdiff_t>(from),
                                     w.chain.begin() + static_cast<std::ptrdiff_t>(to));
    return k.r.depth(w.path[from], w.path[to], compose_chain(part));
}

std::size_t named(const FamilyWitness& w, const std::string& name) {
    for (const auto& [k, v] : w.distinguished)
        if (k == name) return v;
    throw Error(ErrorCode::NodeAbsent, "witness has no module named " + name);
}

// The audited set: W(3), U(2,1), U(2,2), U(3,1).
const std::vector<std::pair<Family, std::vector<std::size_t>>>& audited() {
    static const std::vector<std::pair<Family, std::vector<std::size_t>>> set{
        {Family::W, {3}}, {Family::U, {2, 2}}, {Family::U, {2, 3}}, {Family::U, {3, 2}}};
    return set;
}

const std::vector<AuditReport>& audit_reports() {
    static std::vector<AuditReport> reports = [] {
        std::vector<AuditReport> out;
        AuditOptions o;
        o.samples = 32;
        o.seed = 2024;
        for (const auto& [f, params] : audited()) {
            const Knitted& k = family(f, params);
            out.push_back(audit_theorems(k.q, k.r, o));
        }
        return out;
    }();
    return reports;
}

const AuditEntry* entry(const AuditReport& r, const std::string& id) {
    for (const auto& a : r.audits)
        if (a.id == id) return &a;
    return nullptr;
}

Outcome w3_witness() {
    Outcome o;
    const Knitted& k = family(Family::W, {3});
    FamilyWitness w = witness(k.spec, k.q, k.r);
    Depth total = chain_depth(k, w, 0, 3);
    Depth tail = chain_depth(k, w, 1, 3);
    o.expect(w.chain.size() == 3, "chain has ", w.chain.size(), " maps");
    o.expect(total == Depth{false, 6}, "depth(h3 h2 h1) = ", text(total));
    o.expect(tail.at_least(3), "depth(h3 h2) = ", text(tail));
    o.expect(w.verified, "witness not verified");
    RadicalProfile prof = k.r.profile(w.path.front(), w.path.back());
    o.expect(prof.dims.size() > 7 && prof.dims[6] > 0 && prof.dims[7] == 0, "layer 6/7 profile mismatch");
    o.note(k.q.label(w.path.front()), " -> ", k.q.label(w.path.back()), ": composite ", text(total), ", h3 h2 ",
           text(tail));
    return o;
}

Outcome main_theorem_audit() {
    Outcome o;
    const auto& reports = audit_reports();
    std::size_t samples = 0, deep = 0;
    for (const auto& r : reports) {
        const AuditEntry* a = entry(r, "A");
        o.expect(a && a->passed, r.algebra, ": audit A failed");
        o.expect(!r.triples.empty(), r.algebra, ": no triples");
        for (const auto& t : r.triples) {
            o.expect(t.verdicts.size() == 32, r.algebra, ": ", t.verdicts.size(), " samples on a triple");
            o.expect(t.counterexamples.empty(), r.algebra, ": counterexample on a triple");
            for (const auto& v : t.verdicts) {
                ++samples;
                bool bad = v.composite == Depth{false, 6} && v.first_pair.at_most(2) && v.second_pair.at_most(2);
                o.expect(!bad, r.algebra, ": sample with depth 6 and shallow pairs");
                deep += v.composite.at_least(4) && !v.composite.zero;
            }
        }
    }
    o.note(reports.size(), " algebras, ", samples, " samples, ", deep, " nonzero composites of depth >= 4");
    return o;
}

Outcome corollary_audit() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& r : audit_reports()) {
        const AuditEntry* b = entry(r, "B");
        o.expect(b && b->passed, r.algebra, ": audit B failed");
        for (const auto& t : r.triples) {
            o.expect(t.violations.empty(), r.algebra, ": violation on a triple");
            for (const auto& v : t.verdicts) {
                ++checked;
                o.expect(!v.composite.at_least(4) || v.composite.at_least(6), r.algebra, ": depth ", text(v.composite));
            }
        }
    }
    o.note(checked, " samples re-checked");
    return o;
}

Outcome degree_formula() {
    Outcome o;
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}) {
        const Knitted& k = family(Family::U, {m, n});
        std::size_t a = k.p().vertex("a" + std::to_string(m));
        std::size_t pa = k.q.index_of(standard_word(k.p(), a, StandardKind::Projective));
        std::size_t ia = k.q.index_of(standard_word(k.p(), a, StandardKind::Injective));
        o.expect(k.q.arrows_into(pa).size() == 1 && k.q.arrows_from(ia).size() == 1, "unexpected arrows at P/I");
        const auto& iota = k.q.arrows()[k.q.arrows_into(pa).front()];
        const auto& theta = k.q.arrows()[k.q.arrows_from(ia).front()];
        Degree dr = k.r.degree(iota.source, pa, iota.map, DegreeSide::Right);
        Degree dl = k.r.degree(ia, theta.target, theta.map, DegreeSide::Left);
        std::size_t ce = cg_quiver(k.p(), a, CountingSide::Ending).strings.size();
        std::size_t cs = cg_quiver(k.p(), a, CountingSide::Starting).strings.size();
        const std::size_t want = m + n - 1;
        o.expect(!dr.infinite && dr.value == want, k.p().name(), ": d_r = ", dr.infinite ? "inf" : std::to_string(dr.value));
        o.expect(!dl.infinite && dl.value == want, k.p().name(), ": d_l = ", dl.infinite ? "inf" : std::to_string(dl.value));
        o.expect(ce == want + 1 && cs == want + 1, k.p().name(), ": counting quivers ", ce, "/", cs);
        o.note(k.p().name(), ": d_r ", dr.value, ", d_l ", dl.value, ", card-1 ", ce - 1, "/", cs - 1);
    }
    return o;
}

Outcome u_witnesses() {
    Outcome o;
    struct Case {
        std::size_t m, n, depth;
    };
    for (Case c : {Case{2, 2, 6}, Case{2, 3, 7}, Case{3, 2, 8}}) {
        const Knitted& k = family(Family::U, {c.m, c.n});
        FamilyWitness w = witness(k.spec, k.q, k.r);
        Depth total = chain_depth(k, w, 0, w.n);
        o.expect(total == Depth{false, c.depth}, k.p().name(), ": depth ", text(total));
        Depth first = chain_depth(k, w, 0, w.n - 1), second = chain_depth(k, w, 1, w.n);
        if (c.n == 3) {
            o.expect(first.at_most(2) && second.at_most(2), k.p().name(), ": pairs ", text(first), ", ", text(second));
        }
        o.note(k.p().name(), ": ", text(total), " (parts ", text(first), ", ", text(second), ")");
    }
    return o;
}

Outcome v_witness() {
    Outcome o;
    const Knitted& k = family(Family::V, {2, 3});
    FamilyWitness w = witness(k.spec, k.q, k.r);
    Depth total = chain_depth(k, w, 0, w.n);
    Depth first = chain_depth(k, w, 0, w.n - 1), second = chain_depth(k, w, 1, w.n);
    o.expect(w.verified, "not verified");
    o.expect(total == Depth{false, 8}, "depth ", text(total));
    o.expect(first.at_most(w.n - 1) && second.at_most(w.n - 1), "parts ", text(first), ", ", text(second));
    o.expect(w.rho.size() == 2 * 2 + 2 && w.rho.front() == w.rho.back(), "cycle of ", w.rho.size() - 1, " arrows");
    o.note(k.p().name(), ": ", text(total), " (parts ", text(first), ", ", text(second), ")");
    return o;
}

Outcome sectional_structure() {
    Outcome o;
    const Knitted& k = family(Family::U, {2, 3});
    FamilyWitness w = witness(k.spec, k.q, k.r);
    const auto& s = w.sectional_path;
    o.expect(!s.empty(), "no sectional path");
    if (s.empty()) return o;
    o.expect(path_class(k.q, s).sectional, "path is not sectional");
    std::size_t a = k.p().vertex("a2");
    o.expect(s.front() == k.q.index_of(standard_word(k.p(), a, StandardKind::Projective)), "does not start at P");
    o.expect(s.back() == k.q.index_of(standard_word(k.p(), a, StandardKind::Injective)), "does not end at I");
    std::size_t l = named(w, "L"), simple = named(w, "S"), n = named(w, "N");
    o.expect(std::count(s.begin(), s.end(), l) == 2, "L not visited twice");
    o.expect(std::find(s.begin(), s.end(), simple) != s.end(), "S missing");
    auto second_l = std::find(std::find(s.begin(), s.end(), l) + 1, s.end(), l);
    o.expect(second_l != s.end() && second_l + 1 != s.end() && *(second_l + 1) == n, "L -> N missing");
    o.expect(w.rho.size() == 5 && w.rho.front() == l && w.rho.back() == l, "L-cycle length ", w.rho.size() - 1);
    o.expect(named(w, "M(D1)") == named(w, "I_x"), "M(D1) differs from I_x");
    o.note(s.size(), " modules on the path, cycle length ", w.rho.size() - 1);
    return o;
}

std::vector<Presentation> test_algebras() {
    return {family(Family::W, {3}).p(),        family(Family::U, {2, 2}).p(),
            family(Family::U, {2, 3}).p(),     family(Family::U, {3, 2}).p(),
            family(Family::V, {2, 3}).p(),     fixtures::parse(fixtures::kBanded),
            fixtures::parse(fixtures::kLoopIn), fixtures::parse(fixtures::kLoopKilled)};
}

Outcome tau_agreement() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& p : test_algebras()) {
        for (const auto& s : enumerate_strings(p, 8)) {
            if (s.length() > 8 || is_projective_word(p, s)) continue;
            StringModule m = realize(p, s);
            bool same = is_isomorphic(p, tau(p, m).rep, tau_oracle(p, m.rep));
            o.expect(same, p.name(), ": tau(", format_walk(p, s), ") disagrees with DTr");
            ++checked;
        }
    }
    o.note(checked, " non-projective modules over ", test_algebras().size(), " algebras");
    return o;
}

Outcome radical_cross_check() {
    Outcome o;
    std::size_t compared = 0;
    for (const Knitted* k : {&family(Family::W, {3}), &family(Family::U, {2, 2})}) {
        auto spans = path_span_layers(k->q);
        const std::size_t n = k->q.size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const auto& s = spans[x * n + y];
                const std::size_t top = std::max(s.size(), k->r.nilpotency() + 1);
                for (std::size_t l = 0; l < top; ++l) {
                    const Subspace& def = k->r.layer(x, y, l);
                    bool equal = l < s.size() ? def == s[l] : def.dim() == 0;
                    o.expect(equal, k->p().name(), ": layer ", l, " of (", k->q.label(x), ", ", k->q.label(y), ")");
                    ++compared;
                }
            }
    }
    o.note(compared, " layer comparisons");
    return o;
}

Outcome structure_audits() {
    Outcome o;
    std::vector<Presentation> algebras = test_algebras();
    algebras.erase(std::remove_if(algebras.begin(), algebras.end(),
                                  [](const Presentation& p) { return !find_bands(p, 12).empty(); }),
                   algebras.end());
    algebras.push_back(fixtures::parse(fixtures::kA3));
    std::size_t cycles_seen = 0;
    for (const auto& p : algebras) {
        ARQuiver q = knit(p);
        auto cycles = find_three_cycles(q);
        auto tau_arrows = find_tau_arrows(q);
        o.expect(cycles.empty() == tau_arrows.empty(), p.name(), ": ", cycles.size(), " cycles, ", tau_arrows.size(),
                 " arrows M -> tau M");
        for (const auto& c : cycles) {
            bool mono = false, epi = false;
            for (auto a : c.arrows) {
                mono = mono || is_injective(q.arrows()[a].map);
                epi = epi || is_surjective(q.arrows()[a].map);
            }
            o.expect(mono && epi, p.name(), ": 3-cycle without mono/epi");
        }
        cycles_seen += cycles.size();
    }
    Presentation p = fixtures::parse(fixtures::kLoopIn);
    StringModule m = realize(p, parse_walk(p, "be"));
    TauOrbit orbit = tau_orbit(p, m, 3);
    o.expect(orbit.modules.size() == 4 && !orbit.stopped_at_projective, "orbit stopped early");
    if (orbit.modules.size() == 4) {
        o.expect(is_isomorphic(p, orbit.modules[3].rep, m.rep), "tau^3 M differs from M");
        o.expect(!is_isomorphic(p, orbit.modules[1].rep, m.rep) && !is_isomorphic(p, orbit.modules[2].rep, m.rep),
                 "period below three");
    }
    o.note(algebras.size(), " knitted algebras, ", cycles_seen, " 3-cycles; period of M(be) is 3");
    return o;
}

Outcome representation_infinite() {
    Outcome o;
    Presentation p = fixtures::parse(fixtures::kBanded);
    bool band = false;
    try {
        enumerate_strings(p);
    } catch (const Error& e) {
        band = e.code() == ErrorCode::BandFound;
    }
    o.expect(band, "no BandFound on unbounded enumeration");

    Walk i4 = standard_word(p, p.vertex("4"), StandardKind::Injective);
    TauOrbit orbit = tau_orbit(p, realize(p, i4), 6);
    o.expect(orbit.modules.size() == 7 && !orbit.stopped_at_projective, "tau orbit of I4 has ", orbit.modules.size(),
             " terms");
    auto local = find_tau_arrows(p, {i4});
    o.expect(local.size() == 1 && local.front().module == i4, "I4 -> tau I4 not confirmed");

    auto matches = detect_local_patterns(p);
    bool q3 = std::any_of(matches.begin(), matches.end(),
                          [](const PatternMatch& m) { return m.id == PatternId::Q3 && m.m == 2; });
    o.expect(q3, "no Q3 match with m = 2");
    o.note("tau^6 I4 = ", format_walk(p, orbit.modules.back().word));
    return o;
}

Outcome census() {
    Outcome o;
    const Knitted& k = family(Family::W, {3});
    auto strings = enumerate_strings(k.p());
    o.expect(strings.size() == 12, strings.size(), " strings");
    o.expect(k.q.size() == 12, k.q.size(), " nodes");
    o.expect(k.q.arrows().size() == 16, k.q.arrows().size(), " arrows");
    std::size_t tau_pairs = 0;
    for (const auto& n : k.q.nodes()) tau_pairs += n.tau.has_value();
    o.expect(tau_pairs == 8, tau_pairs, " tau pairs");
    o.note(strings.size(), " strings, ", k.q.arrows().size(), " arrows, ", tau_pairs, " tau pairs");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "W(3) witness", 10, w3_witness},
        {2, "main theorem audit", 300, main_theorem_audit},
        {3, "depth 4 forces depth 6", 300, corollary_audit},
        {4, "degree formula", 60, degree_formula},
        {5, "U witnesses", 60, u_witnesses},
        {6, "V witness", 60, v_witness},
        {7, "sectional structure", 60, sectional_structure},
        {8, "tau against DTr", 300, tau_agreement},
        {9, "radical cross-check", 300, radical_cross_check},
        {10, "structure audits", 300, structure_audits},
        {11, "representation-infinite checks", 60, representation_infinite},
        {12, "W(3) census", 60, census},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) o.failures.push_back("over the time limit");
        bool ok = o.failures.empty();
        failed += !ok;
        std::printf("%s criterion %2d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, secs);
        for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
        for (const auto& f : o.failures) std::printf("      ! %s\n", f.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
