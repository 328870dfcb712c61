#include "doctest.h"

#include "fixtures.hpp"
#include "stringalg/errors.hpp"
#include "stringalg/families.hpp"
#include "stringalg/radical.hpp"
#include "stringalg/strings.hpp"

#include <random>

using namespace stringalg;

namespace {

struct Knitted {
    Presentation p;
    ARQuiver q;
    RadicalStructure r;

    explicit Knitted(Presentation pres) : p(std::move(pres)), q(knit(p)), r(q) {}

    std::size_t node(const char* word) const { return q.index_of(parse_walk(p, word)); }
    std::size_t standard(const char* v, StandardKind kind) const {
        return q.index_of(standard_word(p, p.vertex(v), kind));
    }
    const MorphismMatrix& arrow(std::size_t x, std::size_t y) const {
        auto between = q.arrows_between(x, y);
        REQUIRE(between.size() == 1);
        return q.arrows()[between.front()].map;
    }
};

Presentation family(Family f, std::vector<std::size_t> params) { return make_family(f, params).presentation; }

} // namespace

TEST_CASE("layer zero is Hom and identities are not radical") {
    Knitted k(fixtures::parse(fixtures::kW3));
    for (std::size_t x = 0; x < k.q.size(); ++x) {
        for (std::size_t y = 0; y < k.q.size(); ++y) {
            const HomBasis& h = k.r.hom(x, y);
            CHECK(k.r.layer(x, y, 0).dim() == h.dimension());
            RadicalProfile prof = k.r.profile(x, y);
            REQUIRE_FALSE(prof.dims.empty());
            CHECK(prof.dims.back() == 0);
            for (std::size_t n = 0; n + 1 < prof.dims.size(); ++n) {
                CHECK(prof.dims[n] >= prof.dims[n + 1]);
                CHECK(k.r.layer(x, y, n).contains(k.r.layer(x, y, n + 1)));
            }
            CHECK(k.r.layer(x, y, k.r.nilpotency()).dim() == 0);
        }
        MorphismMatrix id = identity_morphism(k.q.node(x).module.rep);
        CHECK(k.r.depth(x, x, id) == Depth{false, 0});
    }
}

TEST_CASE("W(3) example pair carries layer 6") {
    Knitted k(fixtures::parse(fixtures::kW3));
    RadicalProfile prof = k.r.profile(k.node("b2"), k.node("a b1"));
    REQUIRE(prof.dims.size() == 8);
    CHECK(prof.dims[6] > 0);
    CHECK(prof.dims[7] == 0);
    CHECK(k.r.nilpotency() == 8);
}

TEST_CASE("arrows have depth one and zero has the marker") {
    Knitted k(fixtures::parse(fixtures::kW3));
    for (const auto& a : k.q.arrows()) CHECK(k.r.depth(a.source, a.target, a.map) == Depth{false, 1});
    const auto& a = k.q.arrows().front();
    Depth z = k.r.depth(a.source, a.target, zero_morphism(k.q.node(a.source).module.rep, k.q.node(a.target).module.rep));
    CHECK(z.zero);
    CHECK(z == Depth::of_zero());
    CHECK(z.at_least(100));
    CHECK_FALSE(z.at_most(100));
}

TEST_CASE("sectional composite stays in its layer") {
    Knitted k(fixtures::parse(fixtures::kW3));
    std::size_t p4 = k.standard("4", StandardKind::Projective);
    std::size_t p3 = k.standard("3", StandardKind::Projective);
    std::size_t p2 = k.standard("2", StandardKind::Projective);
    MorphismMatrix c = compose(k.arrow(p3, p2), k.arrow(p4, p3));
    CHECK(k.r.depth(p4, p2, c) == Depth{false, 2});
}

TEST_CASE("non-morphisms are rejected") {
    Knitted k(fixtures::parse(fixtures::kA3));
    const auto& a = k.q.arrows().front();
    MorphismMatrix bad = a.map;
    for (auto& b : bad.blocks)
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = Scalar(1);
    bad.blocks.back() = Matrix(bad.blocks.back().rows(), bad.blocks.back().cols());
    if (!is_intertwiner(k.p, k.q.node(a.source).module.rep, k.q.node(a.target).module.rep, bad))
        CHECK_THROWS_AS(k.r.depth(a.source, a.target, bad), Error);
}

TEST_CASE("absent nodes") {
    Knitted k(fixtures::parse(fixtures::kW3));
    Walk killed = parse_walk(k.p, "b1 b2");
    CHECK_FALSE(k.q.find(killed).has_value());
    try {
        k.q.index_of(killed);
        FAIL("expected NodeAbsent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NodeAbsent);
    }
}

TEST_CASE("definitional and path-span layers agree") {
    for (auto pres : {fixtures::parse(fixtures::kW3), family(Family::U, {2, 2}), family(Family::U, {2, 3}),
                      fixtures::parse(fixtures::kLoopIn)}) {
        Knitted k(pres);
        auto spans = path_span_layers(k.q);
        const std::size_t n = k.q.size();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                const auto& s = spans[x * n + y];
                for (std::size_t l = 0; l <= std::max(s.size(), k.r.nilpotency()); ++l) {
                    const Subspace& def = k.r.layer(x, y, l);
                    if (l < s.size())
                        CHECK(def == s[l]);
                    else
                        CHECK(def.dim() == 0);
                }
            }
    }
}

TEST_CASE("depth is superadditive under composition") {
    Knitted k(family(Family::U, {2, 2}));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coeff(-2, 2);
    auto random_map = [&](std::size_t x, std::size_t y) {
        const HomBasis& h = k.r.hom(x, y);
        MorphismMatrix f = zero_morphism(k.q.node(x).module.rep, k.q.node(y).module.rep);
        for (const auto& b : h.basis) f = f + Scalar(coeff(rng)) * b;
        return f;
    };
    const std::size_t n = k.q.size();
    std::size_t checked = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (k.r.hom(x, y).dimension() == 0 || k.r.hom(y, z).dimension() == 0) continue;
                MorphismMatrix f = random_map(x, y), g = random_map(y, z);
                Depth df = k.r.depth(x, y, f), dg = k.r.depth(y, z, g), dgf = k.r.depth(x, z, compose(g, f));
                if (df.zero || dg.zero) {
                    CHECK(dgf.zero);
                    continue;
                }
                CHECK(dgf.at_least(df.value + dg.value));
                ++checked;
            }
    CHECK(checked > 0);
}

TEST_CASE("degrees of the canonical maps in U") {
    struct Case {
        std::size_t m, n;
    };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{3, 2}}) {
        CAPTURE(c.m);
        CAPTURE(c.n);
        Knitted k(family(Family::U, {c.m, c.n}));
        std::string am = "a" + std::to_string(c.m);
        std::size_t pa = k.standard(am.c_str(), StandardKind::Projective);
        std::size_t ia = k.standard(am.c_str(), StandardKind::Injective);
        REQUIRE(k.q.arrows_into(pa).size() == 1);
        REQUIRE(k.q.arrows_from(ia).size() == 1);
        const auto& iota = k.q.arrows()[k.q.arrows_into(pa).front()];
        const auto& theta = k.q.arrows()[k.q.arrows_from(ia).front()];
        CHECK(is_injective(iota.map));
        CHECK(is_surjective(theta.map));

        Degree dr = k.r.degree(iota.source, pa, iota.map, DegreeSide::Right);
        Degree dl = k.r.degree(ia, theta.target, theta.map, DegreeSide::Left);
        CHECK_FALSE(dr.infinite);
        CHECK_FALSE(dl.infinite);
        CHECK(dr.value == c.m + c.n - 1);
        CHECK(dl.value == c.m + c.n - 1);

        std::size_t a = k.p.vertex(am);
        CountingQuiver qe = cg_quiver(k.p, a, CountingSide::Ending);
        CountingQuiver qs = cg_quiver(k.p, a, CountingSide::Starting);
        CHECK(qe.strings.size() == c.m + c.n);
        CHECK(qe.strings.size() - 1 == dl.value);
        CHECK(qs.strings.size() - 1 == dr.value);

        REQUIRE(dl.witness_node.has_value());
        REQUIRE(dl.witness_map.has_value());
        CHECK(k.r.depth(*dl.witness_node, ia, *dl.witness_map) == Depth{false, dl.value});
        CHECK(k.r.depth(*dl.witness_node, theta.target, compose(theta.map, *dl.witness_map)).at_least(dl.value + 2));
    }
}

TEST_CASE("left degree of L -> N in U(2,1)") {
    FamilySpec spec = make_family(Family::U, {2, 2});
    Knitted k(spec.presentation);
    FamilyWitness w = witness(spec, k.q, k.r);
    std::size_t l = 0, n = 0;
    for (const auto& [name, node] : w.distinguished) {
        if (name == "L") l = node;
        if (name == "N") n = node;
    }
    REQUIRE(l != n);
    Degree d = k.r.degree(l, n, k.arrow(l, n), DegreeSide::Left);
    CHECK_FALSE(d.infinite);
    CHECK(d.value == 1);
}

TEST_CASE("irreducible monomorphisms have infinite left degree") {
    for (auto pres : {fixtures::parse(fixtures::kW3), family(Family::U, {2, 2}), family(Family::U, {2, 3}),
                      family(Family::V, {2, 3})}) {
        Knitted k(pres);
        for (const auto& a : k.q.arrows()) {
            if (!is_injective(a.map)) continue;
            Degree d = k.r.degree(a.source, a.target, a.map, DegreeSide::Left, k.r.nilpotency());
            CHECK(d.infinite);
        }
    }
}

TEST_CASE("degree needs an irreducible map") {
    Knitted k(fixtures::parse(fixtures::kW3));
    std::size_t p4 = k.standard("4", StandardKind::Projective);
    std::size_t p3 = k.standard("3", StandardKind::Projective);
    std::size_t p2 = k.standard("2", StandardKind::Projective);
    MorphismMatrix c = compose(k.arrow(p3, p2), k.arrow(p4, p3));
    CHECK_THROWS_AS(k.r.degree(p4, p2, c, DegreeSide::Left), Error);
}

TEST_CASE("counting quivers") {
    Presentation lone = parse_presentation("vertices 1 2\n");
    CountingQuiver q = cg_quiver(lone, 0, CountingSide::Ending);
    REQUIRE(q.strings.size() == 1);
    CHECK(q.strings[0].is_trivial());
    CHECK(q.arrows.empty());

    Presentation u = family(Family::U, {2, 2});
    CountingQuiver e = cg_quiver(u, u.vertex("a2"), CountingSide::Ending);
    for (const auto& s : e.strings) {
        CHECK(s.end() == u.vertex("a2"));
        CHECK((s.is_trivial() || !s.letters().back().inverse));
        CHECK(is_string(u, s));
    }
    for (auto [a, b] : e.arrows) {
        CHECK(a < e.strings.size());
        CHECK(b < e.strings.size());
    }
}
