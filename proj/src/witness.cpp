#include "stringalg/configurations.hpp"
#include "stringalg/errors.hpp"
#include "stringalg/families.hpp"
#include "stringalg/radical.hpp"

#include <algorithm>
#include <functional>

namespace stringalg {

namespace {

const MorphismMatrix& arrow_map(const ARQuiver& q, std::size_t x, std::size_t y) {
    auto between = q.arrows_between(x, y);
    if (between.empty()) throw Error(ErrorCode::Verification, "no arrow " + q.label(x) + " -> " + q.label(y));
    return q.arrows()[between.front()].map;
}

std::vector<MorphismMatrix> maps_along(const ARQuiver& q, const std::vector<std::size_t>& path) {
    std::vector<MorphismMatrix> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back(arrow_map(q, path[i], path[i + 1]));
    return out;
}

std::size_t node_of(const ARQuiver& q, const Walk& w) { return q.index_of(canonicalize(w)); }

std::size_t standard_node(const ARQuiver& q, std::size_t v, StandardKind kind) {
    return node_of(q, standard_word(q.presentation(), v, kind));
}

std::size_t word_node(const ARQuiver& q, const std::string& text) {
    return node_of(q, parse_walk(q.presentation(), text));
}

// All paths of exactly `length` arrows from `start` (or into `start` when backwards), canonical order.
std::vector<std::vector<std::size_t>> paths_of_length(const ARQuiver& q, std::size_t start, std::size_t length, bool backwards) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur{start};
    std::function<void()> go = [&]() {
        if (cur.size() == length + 1) {
            out.push_back(cur);
            return;
        }
        std::size_t v = cur.back();
        std::vector<std::size_t> next;
        for (auto a : backwards ? q.arrows_into(v) : q.arrows_from(v))
            next.push_back(backwards ? q.arrows()[a].source : q.arrows()[a].target);
        for (auto w : next) {
            cur.push_back(w);
            go();
            cur.pop_back();
        }
    };
    go();
    if (backwards)
        for (auto& p : out) std::reverse(p.begin(), p.end());
    return out;
}

// Shortest continuation of `path` to `goal` keeping the whole path sectional.
std::optional<std::vector<std::size_t>> sectional_extension(const ARQuiver& q, std::vector<std::size_t> path, std::size_t goal) {
    if (path.back() == goal) return std::vector<std::size_t>{goal};
    for (std::size_t len = 1; len <= q.size(); ++len)
        for (auto& tail : paths_of_length(q, path.back(), len, false)) {
            if (tail.back() != goal) continue;
            auto full = path;
            full.insert(full.end(), tail.begin() + 1, tail.end());
            if (path_class(q, full).sectional) return tail;
        }
    return std::nullopt;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
    return s;
}

std::string n_str(std::size_t i) { return std::to_string(i); }

struct Evaluation {
    Depth composite, prefix, suffix, bent;
};

Evaluation evaluate(const RadicalStructure& r, const std::vector<std::size_t>& path,
                    const std::vector<MorphismMatrix>& chain, std::size_t bent_index) {
    const std::size_t n = chain.size();
    std::vector<MorphismMatrix> pre(chain.begin(), chain.end() - 1), suf(chain.begin() + 1, chain.end());
    return {r.depth(path[0], path[n], compose_chain(chain)), r.depth(path[0], path[n - 1], compose_chain(pre)),
            r.depth(path[1], path[n], compose_chain(suf)), r.depth(path[bent_index], path[bent_index + 1], chain[bent_index])};
}

void record(FamilyWitness& w, const Evaluation& e) {
    auto value = [](const Depth& d) { return d.zero ? std::size_t(0) : d.value; };
    w.composite_depth = value(e.composite);
    w.prefix_depth = value(e.prefix);
    w.suffix_depth = value(e.suffix);
}

FamilyWitness witness_w(const FamilySpec& spec, const ARQuiver& q, const RadicalStructure& r) {
    const Presentation& p = q.presentation();
    const std::size_t n = spec.params.at(0);
    if (n < 3) throw Error(ErrorCode::OutOfRange, "the W witness needs n >= 3");
    std::size_t s2 = node_of(q, Walk::trivial(p.vertex("2")));
    std::size_t p1 = standard_node(q, p.vertex("1"), StandardKind::Projective);
    std::size_t i2 = standard_node(q, p.vertex("2"), StandardKind::Injective);
    std::vector<std::size_t> cycle;
    for (const auto& c : find_three_cycles(q)) {
        for (std::size_t k = 0; k < 3; ++k)
            if (c.nodes[k] == p1) cycle = {p1, c.nodes[(k + 1) % 3], c.nodes[(k + 2) % 3], p1};
        if (!cycle.empty()) break;
    }
    if (cycle.empty()) throw Error(ErrorCode::Verification, "no 3-cycle through P(1)");
    if (q.node(cycle[1]).tau != cycle[2]) throw Error(ErrorCode::Verification, "3-cycle through P(1) is not P(1) -> M -> tau M");

    const MorphismMatrix& f2 = arrow_map(q, s2, p1);
    const MorphismMatrix& f3 = arrow_map(q, p1, i2);
    MorphismMatrix bent = f2 + compose(compose_chain(maps_along(q, cycle)), f2);

    FamilyWitness w;
    w.n = n;
    w.expected_depth = n + 3;
    w.rho = cycle;
    w.distinguished = {{"S2", s2}, {"P1", p1}, {"I2", i2}, {"M", cycle[1]}, {"tauM", cycle[2]}};
    for (auto& prefix : paths_of_length(q, s2, n - 2, true)) {
        std::vector<std::size_t> path = prefix;
        path.push_back(p1);
        path.push_back(i2);
        std::vector<MorphismMatrix> chain = maps_along(q, prefix);
        chain.push_back(bent);
        chain.push_back(f3);
        Evaluation e = evaluate(r, path, chain, n - 2);
        if (e.composite == Depth{false, n + 3} && e.suffix.at_least(n) && e.bent == Depth{false, 1}) {
            w.path = path;
            w.chain = chain;
            w.phi = prefix;
            w.distinguished.emplace_back("X1", path[0]);
            record(w, e);
            w.verified = true;
            return w;
        }
    }
    throw Error(ErrorCode::Verification, "no prefix into S2 gives depth " + n_str(n + 3));
}

// Shared shape of the U and V constructions: phi : P ~> L of length n-1 with
// f phi = 0, a cycle rho at L, and h_{n-1} = f_{n-1} + rho f_{n-1}.
struct Shape {
    std::vector<std::size_t> phi, rho;
    std::size_t target = 0;
};

FamilyWitness assemble(const ARQuiver& q, const RadicalStructure& r, std::size_t n, std::size_t m, std::size_t expected,
                       const Shape& s) {
    std::vector<std::size_t> path = s.phi;
    path.push_back(s.target);
    std::vector<MorphismMatrix> chain = maps_along(q, path);
    MorphismMatrix rho = compose_chain(maps_along(q, s.rho));
    chain[n - 2] = chain[n - 2] + compose(rho, chain[n - 2]);
    Evaluation e = evaluate(r, path, chain, n - 2);
    FamilyWitness w;
    w.n = n;
    w.m = m;
    w.expected_depth = expected;
    w.path = path;
    w.chain = chain;
    w.phi = s.phi;
    w.rho = s.rho;
    record(w, e);
    w.verified = e.composite == Depth{false, expected} && e.prefix.at_most(n - 1) && e.suffix.at_most(n - 1) &&
                 e.bent == Depth{false, 1};
    return w;
}

bool kills(const ARQuiver& q, const std::vector<std::size_t>& phi, std::size_t target) {
    return is_zero(compose(arrow_map(q, phi.back(), target), compose_chain(maps_along(q, phi))));
}

FamilyWitness witness_u(const FamilySpec& spec, const ARQuiver& q, const RadicalStructure& r) {
    const Presentation& p = q.presentation();
    const std::size_t m = spec.params.at(0), n = spec.params.at(1);
    const std::size_t am = p.vertex("a" + n_str(m));
    std::size_t pm = standard_node(q, am, StandardKind::Projective);
    std::size_t sm = standard_node(q, am, StandardKind::Simple);
    std::size_t im = standard_node(q, am, StandardKind::Injective);
    std::size_t ix = standard_node(q, p.vertex("x"), StandardKind::Injective);

    std::vector<std::string> g_bar, b_inv;
    for (std::size_t j = 1; j < m; ++j) g_bar.push_back("g" + n_str(j));
    for (std::size_t i = n - 1; i >= 1; --i) b_inv.push_back("b" + n_str(i) + "^-");
    std::vector<std::string> l_word{"g" + n_str(m)}, n_word, d1{"g" + n_str(m)};
    l_word.insert(l_word.end(), b_inv.begin(), b_inv.end());
    l_word.insert(l_word.end(), g_bar.begin(), g_bar.end());
    n_word.assign(b_inv.begin() + 1, b_inv.end());
    n_word.insert(n_word.end(), g_bar.begin(), g_bar.end());
    d1.insert(d1.end(), b_inv.begin(), b_inv.end());
    std::size_t l = word_node(q, join(l_word));
    std::size_t nn = word_node(q, join(n_word));
    std::size_t md1 = word_node(q, join(d1));

    for (auto& phi : paths_of_length(q, pm, n - 1, false)) {
        if (phi.back() != l || !path_class(q, phi).sectional || !kills(q, phi, nn)) continue;
        for (auto& rho : paths_of_length(q, l, 2 * m, false)) {
            if (rho.back() != l || std::find(rho.begin(), rho.end(), sm) == rho.end()) continue;
            std::vector<std::size_t> full = phi;
            full.insert(full.end(), rho.begin() + 1, rho.end());
            full.push_back(nn);
            if (!path_class(q, full).sectional) continue;
            auto tail = sectional_extension(q, full, im);
            if (!tail) continue;
            FamilyWitness w = assemble(q, r, n, m, n + 2 * m, {phi, rho, nn});
            if (!w.verified) continue;
            w.tail = *tail;
            w.sectional_path = full;
            w.sectional_path.insert(w.sectional_path.end(), tail->begin() + 1, tail->end());
            w.distinguished = {{"P", pm}, {"S", sm}, {"I", im}, {"L", l}, {"N", nn}, {"M(D1)", md1}, {"I_x", ix}};
            return w;
        }
    }
    throw Error(ErrorCode::Verification, "no sectional path P ~> L ~> S ~> L -> N ~> I verifies depth " + n_str(n + 2 * m));
}

FamilyWitness witness_v(const FamilySpec& spec, const ARQuiver& q, const RadicalStructure& r) {
    const Presentation& p = q.presentation();
    const std::size_t m = spec.params.at(0), n = spec.params.at(1);
    const std::size_t am = p.vertex("a" + n_str(m));
    std::size_t pm = standard_node(q, am, StandardKind::Projective);
    std::size_t pw = standard_node(q, p.vertex("w"), StandardKind::Projective);
    std::size_t sm = standard_node(q, am, StandardKind::Simple);
    std::size_t im = standard_node(q, am, StandardKind::Injective);
    // Same shape as U, entered from the extra sink w, with an odd cycle at L.
    for (auto& phi : paths_of_length(q, pw, n - 1, false)) {
        if (!path_class(q, phi).sectional) continue;
        std::size_t l = phi.back();
        for (auto a : q.arrows_from(l)) {
            std::size_t nn = q.arrows()[a].target;
            if (!kills(q, phi, nn)) continue;
            for (auto& rho : paths_of_length(q, l, 2 * m + 1, false)) {
                if (rho.back() != l) continue;
                FamilyWitness w = assemble(q, r, n, m, n + 2 * m + 1, {phi, rho, nn});
                if (!w.verified) continue;
                std::vector<std::size_t> full = phi;
                full.insert(full.end(), rho.begin() + 1, rho.end());
                full.push_back(nn);
                if (path_class(q, full).sectional)
                    if (auto tail = sectional_extension(q, full, im)) {
                        w.tail = *tail;
                        w.sectional_path = full;
                        w.sectional_path.insert(w.sectional_path.end(), tail->begin() + 1, tail->end());
                    }
                w.distinguished = {{"P", pm}, {"S", sm}, {"I", im}, {"L", l}, {"N", nn}, {"Pw", pw}};
                return w;
            }
        }
    }
    throw Error(ErrorCode::Verification, "no chain P_w ~> L -> N with a cycle of length " + n_str(2 * m + 1) +
                                             " at L verifies depth " + n_str(n + 2 * m + 1));
}

} // namespace

FamilyWitness witness(const FamilySpec& spec, const ARQuiver& quiver, const RadicalStructure& radical) {
    switch (spec.family) {
    case Family::W: return witness_w(spec, quiver, radical);
    case Family::U: return witness_u(spec, quiver, radical);
    case Family::V: return witness_v(spec, quiver, radical);
    }
    throw Error(ErrorCode::OutOfRange, "unknown family");
}

} // namespace stringalg
