#include "doctest.h"

#include "fixtures.hpp"
#include "stringalg/configurations.hpp"
#include "stringalg/errors.hpp"
#include "stringalg/export.hpp"
#include "stringalg/families.hpp"
#include "stringalg/strings.hpp"

#include <algorithm>

using namespace stringalg;

namespace {

std::size_t bound(const PatternMatch& m, const std::string& name) {
    for (const auto& [k, v] : m.vertices)
        if (k == name) return v;
    FAIL("unbound pattern vertex " << name);
    return 0;
}

} // namespace

TEST_CASE("pattern detection") {
    Presentation banded = fixtures::parse(fixtures::kBanded);
    auto matches = detect_local_patterns(banded);
    auto q3 = std::find_if(matches.begin(), matches.end(), [](const PatternMatch& m) { return m.id == PatternId::Q3; });
    REQUIRE(q3 != matches.end());
    CHECK(q3->m == 2);
    CHECK(pattern_name(q3->id) == "Q3");
    for (const auto& m : matches)
        for (const auto& c : m.conditions) CHECK(c.passed);

    Presentation killed = fixtures::parse(fixtures::kLoopKilled);
    auto km = detect_local_patterns(killed);
    REQUIRE(km.size() == 1);
    CHECK(km[0].id == PatternId::Q1);
    CHECK(bound(km[0], "a") == killed.vertex("a"));

    CHECK(detect_local_patterns(fixtures::parse(fixtures::kA3)).empty());

    Presentation in = fixtures::parse(fixtures::kLoopIn);
    auto im = detect_local_patterns(in);
    CHECK(std::any_of(im.begin(), im.end(), [](const PatternMatch& m) { return m.id == PatternId::LoopIn; }));

    Presentation w3 = fixtures::parse(fixtures::kW3);
    auto wm = detect_local_patterns(w3);
    CHECK(std::any_of(wm.begin(), wm.end(), [](const PatternMatch& m) { return pattern_name(m.id) == "loopOut"; }));
}

TEST_CASE("tau arrows and three cycles on W(3)") {
    Presentation p = fixtures::parse(fixtures::kW3);
    ARQuiver q = knit(p);
    auto tau_arrows = find_tau_arrows(q);
    auto cycles = find_three_cycles(q);
    CHECK(tau_arrows.size() == 3);
    CHECK(cycles.size() == 3);
    for (const auto& t : tau_arrows) {
        CHECK(q.node(t.module).tau == t.tau);
        CHECK_FALSE(q.arrows_between(t.module, t.tau).empty());
    }
    std::size_t p1 = q.index_of(standard_word(p, p.vertex("1"), StandardKind::Projective));
    bool through_p1 = false;
    for (const auto& c : cycles) {
        REQUIRE(c.nodes.size() == 3);
        CHECK(c.nodes[0] == *std::min_element(c.nodes.begin(), c.nodes.end()));
        bool mono = false, epi = false;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& a = q.arrows()[c.arrows[i]];
            CHECK(a.source == c.nodes[i]);
            CHECK(a.target == c.nodes[(i + 1) % 3]);
            mono = mono || is_injective(a.map);
            epi = epi || is_surjective(a.map);
        }
        CHECK(mono);
        CHECK(epi);
        through_p1 = through_p1 || std::find(c.nodes.begin(), c.nodes.end(), p1) != c.nodes.end();
    }
    CHECK(through_p1);
}

TEST_CASE("no cycles without tau arrows") {
    for (const char* src : {fixtures::kA2, fixtures::kA3}) {
        ARQuiver q = knit(fixtures::parse(src));
        CHECK(find_tau_arrows(q).empty());
        CHECK(find_three_cycles(q).empty());
    }
}

TEST_CASE("path classes") {
    Presentation p = fixtures::parse(fixtures::kW3);
    ARQuiver q = knit(p);
    auto proj = [&](const char* v) { return q.index_of(standard_word(p, p.vertex(v), StandardKind::Projective)); };
    PathClass c = path_class(q, {proj("4"), proj("3"), proj("2")});
    CHECK(c.sectional);
    CHECK(c.presectional);

    for (std::size_t y = 0; y < q.size(); ++y) {
        if (!q.node(y).tau) continue;
        std::size_t x = *q.node(y).tau;
        for (auto a : q.arrows_from(x)) {
            std::size_t mid = q.arrows()[a].target;
            CHECK_FALSE(path_class(q, {x, mid, y}).sectional);
        }
    }
    CHECK_THROWS_AS(path_class(q, {proj("2"), proj("4")}), Error);
    CHECK_THROWS_AS(path_class(q, {proj("2"), 999}), Error);
}

TEST_CASE("local tau arrows in the banded example") {
    Presentation p = fixtures::parse(fixtures::kBanded);
    Walk i4 = standard_word(p, p.vertex("4"), StandardKind::Injective);
    auto found = find_tau_arrows(p, {i4});
    REQUIRE(found.size() == 1);
    CHECK(found[0].module == i4);
    CHECK(found[0].tau == *tau_word(p, i4));

    auto cands = pattern_candidates(p, detect_local_patterns(p));
    CHECK(std::find(cands.begin(), cands.end(), i4) != cands.end());

    TauOrbit orbit = tau_orbit(p, realize(p, i4), 6);
    CHECK(orbit.modules.size() == 7);
    CHECK_FALSE(orbit.stopped_at_projective);
}

TEST_CASE("period three in the incoming loop algebra") {
    Presentation p = fixtures::parse(fixtures::kLoopIn);
    ARQuiver q = knit(p);
    std::size_t be = q.index_of(parse_walk(p, "be"));
    auto period = tau_period(q, be);
    REQUIRE(period.has_value());
    CHECK(*period == 3);
    auto tau_arrows = find_tau_arrows(q);
    CHECK(std::any_of(tau_arrows.begin(), tau_arrows.end(), [&](const TauArrow& t) { return t.module == be; }));
    CHECK_FALSE(find_three_cycles(q).empty());

    std::size_t e2 = q.index_of(Walk::trivial(p.vertex("2")));
    CHECK_FALSE(tau_period(q, e2).has_value());
}

TEST_CASE("audits pass and are deterministic") {
    AuditOptions o;
    o.samples = 4;
    o.seed = 11;
    for (auto p : {fixtures::parse(fixtures::kW3), fixtures::parse(fixtures::kLoopIn),
                   make_family(Family::U, {2, 2}).presentation}) {
        AuditReport r = audit_theorems(p, o);
        CHECK(r.passed());
        REQUIRE(r.audits.size() == 5);
        for (const auto& a : r.audits) CHECK_MESSAGE(a.passed, a.id);
        for (const auto& t : r.triples) {
            CHECK(t.verdicts.size() == o.samples);
            CHECK(t.counterexamples.empty());
            CHECK(t.violations.empty());
        }
        ARQuiver q = knit(p);
        RadicalStructure rad(q);
        std::string once = to_json(q, audit_theorems(q, rad, o)).dump();
        CHECK(once == to_json(q, audit_theorems(q, rad, o)).dump());
        CHECK(once == to_json(q, r).dump());
    }
    AuditOptions other = o;
    other.seed = 12;
    ARQuiver w3 = knit(fixtures::parse(fixtures::kW3));
    RadicalStructure rad(w3);
    CHECK(to_json(w3, audit_theorems(w3, rad, o)).dump() != to_json(w3, audit_theorems(w3, rad, other)).dump());
}

TEST_CASE("audit refuses banded input") {
    try {
        audit_theorems(fixtures::parse(fixtures::kBanded));
        FAIL("expected BandFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BandFound);
    }
}
