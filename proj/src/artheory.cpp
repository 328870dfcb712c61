#include "stringalg/artheory.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stringalg {

namespace {

// `o` is the orientation of the letter that an add move attaches at the end:
// inverse for tau inverse (hooks), direct for tau (cohooks).

enum class Side { Start, End };

struct SidePlan {
    bool add = false;
    std::optional<Letter> forced;
};

struct Plan {
    SidePlan start;
    SidePlan end;
};

constexpr std::size_t kMaxWalk = 100000;

Surgery identity_surgery(const Walk& w) {
    Surgery s{w, {}};
    for (std::size_t i = 0; i <= w.length(); ++i) s.positions.emplace_back(i);
    return s;
}

Surgery then(const Surgery& first, const Surgery& second) {
    Surgery r{second.walk, {}};
    for (const auto& p : first.positions) r.positions.push_back(p ? second.positions.at(*p) : std::nullopt);
    return r;
}

std::optional<Surgery> end_add(const Presentation& p, const Walk& w, bool o, std::optional<Letter> forced) {
    auto cands = append_candidates(p, w, o);
    Letter first{};
    if (forced) {
        if (std::find(cands.begin(), cands.end(), *forced) == cands.end()) return std::nullopt;
        first = *forced;
    } else {
        if (cands.empty()) return std::nullopt;
        if (cands.size() > 1) throw Error(ErrorCode::Inconsistency, "ambiguous hook at " + format_walk(p, w));
        first = cands.front();
    }
    Surgery s = identity_surgery(w);
    Walk grown = w.appended(p, first);
    while (true) {
        auto next = append_candidates(p, grown, !o);
        if (next.empty()) break;
        if (next.size() > 1) throw Error(ErrorCode::Inconsistency, "ambiguous hook continuation at " + format_walk(p, grown));
        grown = grown.appended(p, next.front());
        if (grown.length() > kMaxWalk) throw Error(ErrorCode::OutOfRange, "unbounded hook: algebra is infinite-dimensional");
    }
    s.walk = grown;
    return s;
}

std::optional<Surgery> end_delete(const Walk& w, bool o) {
    std::size_t j = w.length();
    while (j > 0 && w.letter(j - 1).inverse == o) --j;
    if (j == 0) return std::nullopt;
    Surgery s{w.slice(0, j - 1), {}};
    for (std::size_t i = 0; i <= w.length(); ++i) s.positions.push_back(i < j ? std::optional<std::size_t>(i) : std::nullopt);
    return s;
}

std::optional<Surgery> end_move(const Presentation& p, const Walk& w, const SidePlan& plan, bool o) {
    return plan.add ? end_add(p, w, o, plan.forced) : end_delete(w, o);
}

// Applies one move on the given side of s.walk and composes with s.
std::optional<Surgery> apply_move(const Presentation& p, const Surgery& s, Side side, const SidePlan& plan, bool o) {
    if (side == Side::End) {
        auto r = end_move(p, s.walk, plan, o);
        if (!r) return std::nullopt;
        return then(s, *r);
    }
    const std::size_t n = s.walk.length();
    auto r = end_move(p, s.walk.inverse(), plan, o);
    if (!r) return std::nullopt;
    Surgery flipped{r->walk.inverse(), {}};
    const std::size_t m = r->walk.length();
    for (std::size_t i = 0; i <= n; ++i) {
        auto k = r->positions[n - i];
        flipped.positions.push_back(k ? std::optional<std::size_t>(m - *k) : std::nullopt);
    }
    return then(s, flipped);
}

std::optional<Plan> make_plan(const Presentation& p, const Walk& c, bool o) {
    Plan plan;
    if (c.is_trivial()) {
        auto cands = append_candidates(p, c, o);
        if (cands.empty()) return std::nullopt;
        plan.start = {true, cands[0]};
        if (cands.size() > 1) plan.end = {true, cands[1]};
        return plan;
    }
    // Letters are fixed here: a deletion on the other side may shrink the walk
    // to a trivial one, where the hook direction is no longer determined.
    auto fix = [](SidePlan& side, const std::vector<Letter>& cands) {
        side.add = !cands.empty();
        if (side.add) side.forced = cands.front();
    };
    fix(plan.start, append_candidates(p, c.inverse(), o));
    fix(plan.end, append_candidates(p, c, o));
    return plan;
}

// Adds before deletions; a deletion that is undefined makes the result undefined.
std::optional<Surgery> run_plan(const Presentation& p, const Walk& c, const Plan& plan, bool o, bool do_start, bool do_end) {
    std::optional<Surgery> s = identity_surgery(c);
    if (do_end && plan.end.add) s = apply_move(p, *s, Side::End, plan.end, o);
    if (s && do_start && plan.start.add) s = apply_move(p, *s, Side::Start, plan.start, o);
    if (s && do_end && !plan.end.add) s = apply_move(p, *s, Side::End, plan.end, o);
    if (s && do_start && !plan.start.add) s = apply_move(p, *s, Side::Start, plan.start, o);
    return s;
}

std::optional<Walk> translate(const Presentation& p, const Walk& w, bool o) {
    if (!is_string(p, w)) throw Error(ErrorCode::InvalidWalk, "not a string: " + format_walk(p, w));
    auto plan = make_plan(p, w, o);
    if (!plan) return std::nullopt;
    auto s = run_plan(p, w, *plan, o, true, true);
    if (!s) return std::nullopt;
    if (!is_string(p, s->walk)) throw Error(ErrorCode::Inconsistency, "surgery produced a non-string: " + format_walk(p, s->walk));
    return canonicalize(s->walk);
}

// Index of walk position i inside the canonical orientation of the walk.
std::size_t canonical_position(const Walk& w, std::size_t i) { return is_canonical(w) ? i : w.length() - i; }

std::vector<std::optional<std::size_t>> to_canonical(const Walk& source, const Walk& target,
                                                     const std::vector<std::optional<std::size_t>>& positions) {
    std::vector<std::optional<std::size_t>> out(source.length() + 1);
    for (std::size_t i = 0; i <= source.length(); ++i) {
        auto k = positions[i];
        if (k) out[canonical_position(source, i)] = canonical_position(target, *k);
    }
    return out;
}

} // namespace

std::optional<Walk> tau_word(const Presentation& p, const Walk& w) { return translate(p, w, false); }

std::optional<Walk> tau_inverse_word(const Presentation& p, const Walk& w) { return translate(p, w, true); }

bool is_projective_word(const Presentation& p, const Walk& w) {
    Walk c = canonicalize(w);
    for (std::size_t v = 0; v < p.vertex_count(); ++v)
        if (standard_word(p, v, StandardKind::Projective) == c) return true;
    return false;
}

bool is_injective_word(const Presentation& p, const Walk& w) {
    Walk c = canonicalize(w);
    for (std::size_t v = 0; v < p.vertex_count(); ++v)
        if (standard_word(p, v, StandardKind::Injective) == c) return true;
    return false;
}

StringModule tau(const Presentation& p, const StringModule& m, const Field& field) {
    if (is_projective_word(p, m.word)) throw Error(ErrorCode::IsProjective, "tau of a projective: " + format_walk(p, m.word));
    auto w = tau_word(p, m.word);
    if (!w) throw Error(ErrorCode::Inconsistency, "tau surgery undefined on a non-projective: " + format_walk(p, m.word));
    return realize(p, *w, field);
}

StringModule tau_inverse(const Presentation& p, const StringModule& m, const Field& field) {
    if (is_injective_word(p, m.word)) throw Error(ErrorCode::IsInjective, "tau inverse of an injective: " + format_walk(p, m.word));
    auto w = tau_inverse_word(p, m.word);
    if (!w) throw Error(ErrorCode::Inconsistency, "tau inverse surgery undefined on a non-injective: " + format_walk(p, m.word));
    return realize(p, *w, field);
}

namespace {

struct PathIndex {
    std::vector<VertexPath> paths;
    std::map<std::pair<std::size_t, Path>, std::size_t> ids;

    explicit PathIndex(const Presentation& p) : paths(nonzero_paths(p)) {
        for (std::size_t i = 0; i < paths.size(); ++i) ids[{paths[i].start, paths[i].arrows}] = i;
    }

    std::optional<std::size_t> find(std::size_t start, const Path& arrows) const {
        auto it = ids.find({start, arrows});
        if (it == ids.end()) return std::nullopt;
        return it->second;
    }
};

// Basis of a direct sum of projectives (or injectives) over chosen vertices,
// labelled by (summand, path id) and grouped by vertex.
struct SumBasis {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> at;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> local;
    std::vector<std::size_t> vertex_of; // summand -> top or socle vertex
};

SumBasis sum_basis(const Presentation& p, const PathIndex& idx, const std::vector<std::size_t>& vertices, bool projective) {
    SumBasis b;
    b.at.assign(p.vertex_count(), {});
    b.vertex_of = vertices;
    for (std::size_t j = 0; j < vertices.size(); ++j)
        for (std::size_t q = 0; q < idx.paths.size(); ++q) {
            const auto& path = idx.paths[q];
            std::size_t from = path.start, to = path_end(p, path);
            if ((projective ? from : to) != vertices[j]) continue;
            std::size_t at = projective ? to : from;
            b.local[{j, q}] = b.at[at].size();
            b.at[at].emplace_back(j, q);
        }
    return b;
}

// Arrow action on a sum of projectives (q -> q a) or injectives (a y -> y).
Matrix sum_action(const Presentation& p, const PathIndex& idx, const SumBasis& b, std::size_t a, bool projective) {
    std::size_t s = p.arrow(a).source, t = p.arrow(a).target;
    Matrix m(b.at[t].size(), b.at[s].size());
    for (std::size_t c = 0; c < b.at[s].size(); ++c) {
        auto [j, q] = b.at[s][c];
        const auto& path = idx.paths[q];
        std::optional<std::size_t> image;
        if (projective) {
            Path longer = path.arrows;
            longer.push_back(a);
            image = idx.find(path.start, longer);
        } else if (!path.arrows.empty() && path.arrows.front() == a) {
            image = idx.find(t, Path(path.arrows.begin() + 1, path.arrows.end()));
        }
        if (image) m(b.local.at({j, *image}), c) = Scalar(1);
    }
    return m;
}

Vector apply_path(const Representation& m, const Path& path, Vector v) {
    for (auto a : path) {
        const Matrix& f = m.maps[a];
        Vector out(f.rows());
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t k = 0; k < f.cols(); ++k)
                if (!f(i, k).is_zero() && !v[k].is_zero()) out[i] += f(i, k) * v[k];
        v = std::move(out);
    }
    return v;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (!m(i, k).is_zero() && !v[k].is_zero()) out[i] += m(i, k) * v[k];
    return out;
}

Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = Scalar(1);
    return v;
}

// Generators of a subrepresentation given per vertex, modulo its radical.
// sub[w] spans the subspace at w; action[a] are the ambient arrow matrices.
std::vector<std::pair<std::size_t, Vector>> top_generators(const Presentation& p, const std::vector<std::vector<Vector>>& sub,
                                                           const std::vector<Matrix>& action,
                                                           const std::vector<std::size_t>& ambient_dims) {
    std::vector<std::pair<std::size_t, Vector>> gens;
    for (std::size_t w = 0; w < p.vertex_count(); ++w) {
        Subspace rad(ambient_dims[w]);
        for (auto a : p.arrows_to(w))
            for (const auto& v : sub[p.arrow(a).source]) rad.add(mat_vec(action[a], v));
        for (const auto& v : sub[w])
            if (rad.add(v)) gens.emplace_back(w, v);
    }
    return gens;
}

// Restriction of ambient arrow matrices to per-vertex subspace bases.
Representation restrict_to(const Presentation& p, const std::vector<std::vector<Vector>>& sub, const std::vector<Matrix>& action) {
    Representation r;
    for (const auto& s : sub) r.dims.push_back(s.size());
    for (std::size_t a = 0; a < p.arrow_count(); ++a) {
        std::size_t s = p.arrow(a).source, t = p.arrow(a).target;
        Matrix m(sub[t].size(), sub[s].size());
        Matrix basis(action[a].rows(), sub[t].size());
        for (std::size_t c = 0; c < sub[t].size(); ++c)
            for (std::size_t i = 0; i < basis.rows(); ++i) basis(i, c) = sub[t][c][i];
        for (std::size_t c = 0; c < sub[s].size(); ++c) {
            auto x = solve(basis, mat_vec(action[a], sub[s][c]));
            if (!x) throw Error(ErrorCode::Inconsistency, "subspace is not a subrepresentation");
            for (std::size_t i = 0; i < sub[t].size(); ++i) m(i, c) = (*x)[i];
        }
        r.maps.push_back(std::move(m));
    }
    return r;
}

} // namespace

bool has_projective_summand(const Presentation& p, const Representation& m) {
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
        if (m.dims[v] == 0) continue;
        Representation pv = projective_representation(p, v);
        HomBasis in = hom_basis(p, pv, m);
        if (in.dimension() == 0) continue;
        HomBasis out = hom_basis(p, m, pv);
        Subspace rad = end_radical(p, pv);
        for (const auto& g : out.basis)
            for (const auto& f : in.basis)
                if (!rad.contains(flatten(compose(g, f)))) return true;
    }
    return false;
}

Representation tau_oracle(const Presentation& p, const Representation& m) {
    if (!is_valid_representation(p, m)) throw Error(ErrorCode::ShapeMismatch, "invalid representation");
    if (m.total_dim() == 0) return m;
    if (has_projective_summand(p, m)) throw Error(ErrorCode::ProjectiveSummand, "module has a projective direct summand");
    PathIndex idx(p);
    const std::size_t nv = p.vertex_count();

    // Projective cover P0 -> M from a basis of the top.
    std::vector<std::vector<Vector>> whole(nv);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 0; i < m.dims[v]; ++i) whole[v].push_back(unit(m.dims[v], i));
    auto gens = top_generators(p, whole, m.maps, m.dims);
    std::vector<std::size_t> tops;
    for (const auto& g : gens) tops.push_back(g.first);
    SumBasis p0 = sum_basis(p, idx, tops, true);

    std::vector<std::vector<Vector>> kernel_at(nv);
    std::vector<std::size_t> p0_dims(nv);
    for (std::size_t w = 0; w < nv; ++w) {
        p0_dims[w] = p0.at[w].size();
        Matrix pi(m.dims[w], p0.at[w].size());
        for (std::size_t c = 0; c < p0.at[w].size(); ++c) {
            auto [j, q] = p0.at[w][c];
            Vector image = apply_path(m, idx.paths[q].arrows, gens[j].second);
            for (std::size_t i = 0; i < image.size(); ++i) pi(i, c) = image[i];
        }
        kernel_at[w] = kernel(pi);
    }
    std::vector<Matrix> p0_action;
    for (std::size_t a = 0; a < p.arrow_count(); ++a) p0_action.push_back(sum_action(p, idx, p0, a, true));

    // Projective cover P1 -> K of the syzygy.
    auto kgens = top_generators(p, kernel_at, p0_action, p0_dims);
    if (kgens.empty()) throw Error(ErrorCode::ProjectiveSummand, "module is projective");
    std::vector<std::size_t> k_tops;
    for (const auto& g : kgens) k_tops.push_back(g.first);

    // Nakayama functor: P(v) -> I(v); the component q : v ~> u of a generator
    // becomes y* -> z* whenever y = z q.
    SumBasis nu1 = sum_basis(p, idx, k_tops, false);
    SumBasis nu0 = sum_basis(p, idx, tops, false);
    std::vector<std::vector<Vector>> result(nv);
    for (std::size_t w = 0; w < nv; ++w) {
        Matrix d(nu0.at[w].size(), nu1.at[w].size());
        for (std::size_t c = 0; c < nu1.at[w].size(); ++c) {
            auto [l, y] = nu1.at[w][c];
            const auto& ypath = idx.paths[y];
            std::size_t u = kgens[l].first;
            const Vector& coeffs = kgens[l].second;
            for (std::size_t k = 0; k < p0.at[u].size(); ++k) {
                if (coeffs[k].is_zero()) continue;
                auto [j, q] = p0.at[u][k];
                const Path& qa = idx.paths[q].arrows;
                if (qa.size() > ypath.arrows.size()) continue;
                if (!std::equal(qa.begin(), qa.end(), ypath.arrows.end() - static_cast<std::ptrdiff_t>(qa.size())))
                    continue;
                auto z = idx.find(ypath.start, Path(ypath.arrows.begin(), ypath.arrows.end() - static_cast<std::ptrdiff_t>(qa.size())));
                if (!z || path_end(p, idx.paths[*z]) != tops[j]) continue;
                d(nu0.local.at({j, *z}), c) += coeffs[k];
            }
        }
        result[w] = kernel(d);
    }
    std::vector<Matrix> nu1_action;
    for (std::size_t a = 0; a < p.arrow_count(); ++a) nu1_action.push_back(sum_action(p, idx, nu1, a, false));
    return restrict_to(p, result, nu1_action);
}

namespace {

struct Piece {
    Walk walk;        // as produced by surgery
    Surgery from_left; // left term -> piece
    Surgery to_right;  // piece -> right term
};

} // namespace

AlmostSplitSequence ar_sequence(const Presentation& p, const StringModule& m, SequenceSide side, const Field& field) {
    if (side == SequenceSide::EndingAt) {
        if (is_projective_word(p, m.word))
            throw Error(ErrorCode::IsProjective, "no almost split sequence ends at a projective: " + format_walk(p, m.word));
        auto x = tau_word(p, m.word);
        if (!x) throw Error(ErrorCode::Inconsistency, "tau surgery undefined on a non-projective");
        AlmostSplitSequence s = ar_sequence(p, realize(p, *x, field), SequenceSide::StartingAt, field);
        if (!(s.right.word == canonicalize(m.word)))
            throw Error(ErrorCode::Inconsistency, "tau inverse of tau differs from " + format_walk(p, m.word));
        return s;
    }
    if (is_injective_word(p, m.word))
        throw Error(ErrorCode::IsInjective, "no almost split sequence starts at an injective: " + format_walk(p, m.word));
    const Walk c = canonicalize(m.word);
    const bool o = true;
    auto plan = make_plan(p, c, o);
    std::optional<Surgery> whole = plan ? run_plan(p, c, *plan, o, true, true) : std::nullopt;
    if (!whole) throw Error(ErrorCode::Inconsistency, "tau inverse surgery undefined on a non-injective: " + format_walk(p, c));

    std::vector<Piece> pieces;
    for (Side side_first : {Side::Start, Side::End}) {
        bool start_first = side_first == Side::Start;
        auto part = run_plan(p, c, *plan, o, start_first, !start_first);
        if (!part) continue;
        Side other = start_first ? Side::End : Side::Start;
        auto rest = apply_move(p, identity_surgery(part->walk), other, start_first ? plan->end : plan->start, o);
        if (!rest || !(rest->walk == whole->walk))
            throw Error(ErrorCode::Inconsistency, "surgery moves do not commute on " + format_walk(p, c));
        pieces.push_back({part->walk, *part, *rest});
    }
    if (pieces.empty()) throw Error(ErrorCode::Inconsistency, "almost split sequence without middle term");

    AlmostSplitSequence s;
    s.left = realize(p, c, field);
    s.right = realize(p, canonicalize(whole->walk), field);
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return walk_less(canonicalize(a.walk), canonicalize(b.walk)); });
    Scalar sign = field.one();
    for (const auto& piece : pieces) {
        StringModule mid = realize(p, canonicalize(piece.walk), field);
        s.left_maps.push_back(position_map(s.left, mid, to_canonical(c, piece.walk, piece.from_left.positions), field.one()));
        s.right_maps.push_back(position_map(mid, s.right, to_canonical(piece.walk, whole->walk, piece.to_right.positions), sign));
        s.middle.push_back(std::move(mid));
        sign = -sign;
    }
    verify_sequence(p, s);
    return s;
}

void verify_sequence(const Presentation& p, const AlmostSplitSequence& s) {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Inconsistency, "almost split sequence starting at " + format_walk(p, s.left.word) + ": " + what);
    };
    if (s.middle.empty() || s.middle.size() > 2) fail("middle term count out of range");
    std::size_t mid_dim = 0;
    for (const auto& m : s.middle) mid_dim += m.rep.total_dim();
    if (mid_dim != s.left.rep.total_dim() + s.right.rep.total_dim()) fail("dimensions do not add up");
    const std::size_t nv = p.vertex_count();
    for (std::size_t i = 0; i < s.middle.size(); ++i) {
        if (!is_intertwiner(p, s.left.rep, s.middle[i].rep, s.left_maps[i])) fail("left map is not a morphism");
        if (!is_intertwiner(p, s.middle[i].rep, s.right.rep, s.right_maps[i])) fail("right map is not a morphism");
    }
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t rows = 0;
        for (const auto& m : s.middle) rows += m.rep.dims[v];
        Matrix f(rows, s.left.rep.dims[v]), g(s.right.rep.dims[v], rows);
        std::size_t off = 0;
        Matrix sum(s.right.rep.dims[v], s.left.rep.dims[v]);
        for (std::size_t i = 0; i < s.middle.size(); ++i) {
            const Matrix& fi = s.left_maps[i].blocks[v];
            const Matrix& gi = s.right_maps[i].blocks[v];
            for (std::size_t r = 0; r < fi.rows(); ++r)
                for (std::size_t c = 0; c < fi.cols(); ++c) f(off + r, c) = fi(r, c);
            for (std::size_t r = 0; r < gi.rows(); ++r)
                for (std::size_t c = 0; c < gi.cols(); ++c) g(r, off + c) = gi(r, c);
            off += fi.rows();
            sum = sum + gi * fi;
        }
        if (!sum.is_zero()) fail("composite is not zero");
        if (rank(f) != f.cols()) fail("left map is not injective");
        if (rank(g) != g.rows()) fail("right map is not surjective");
    }
    // Split iff the identity of the left term factors through the left map.
    Subspace retractions(hom_ambient(s.left.rep, s.left.rep));
    for (std::size_t i = 0; i < s.middle.size(); ++i)
        for (const auto& r : hom_basis(p, s.middle[i].rep, s.left.rep).basis)
            retractions.add(flatten(compose(r, s.left_maps[i])));
    if (retractions.contains(flatten(identity_morphism(s.left.rep)))) fail("sequence splits");
}

std::optional<std::size_t> ARQuiver::find(const Walk& w) const {
    Walk c = canonicalize(w);
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), c,
                               [](const Node& n, const Walk& key) { return walk_less(n.word(), key); });
    if (it == nodes_.end() || !(it->word() == c)) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t ARQuiver::index_of(const Walk& w) const {
    auto i = find(w);
    if (!i) throw Error(ErrorCode::NodeAbsent, "module " + format_walk(presentation_, w) + " is not a node");
    return *i;
}

std::vector<std::size_t> ARQuiver::arrows_between(std::size_t source, std::size_t target) const {
    std::vector<std::size_t> out;
    for (auto a : out_.at(source))
        if (arrows_[a].target == target) out.push_back(a);
    return out;
}

const AlmostSplitSequence* ARQuiver::mesh(std::size_t node) const {
    auto it = meshes_.find(node);
    return it == meshes_.end() ? nullptr : &it->second;
}

std::string ARQuiver::label(std::size_t node) const { return format_walk(presentation_, nodes_.at(node).word()); }

ARQuiver knit(const Presentation& p, const Field& field) {
    if (!p.validation().is_string_algebra) throw Error(ErrorCode::OutOfRange, "not a string algebra");
    if (nonzero_path_count(p).infinite) throw Error(ErrorCode::OutOfRange, "algebra is infinite-dimensional");
    ARQuiver g(p, field);
    for (const auto& w : enumerate_strings(p)) g.nodes_.push_back({realize(p, w, field), false, false, {}, {}});
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
        g.nodes_[g.index_of(standard_word(p, v, StandardKind::Projective))].projective = true;
        g.nodes_[g.index_of(standard_word(p, v, StandardKind::Injective))].injective = true;
    }
    struct Pending {
        std::size_t source, target;
        MorphismMatrix map;
    };
    std::vector<Pending> pending;
    for (std::size_t y = 0; y < g.nodes_.size(); ++y) {
        const StringModule& module = g.nodes_[y].module;
        if (g.nodes_[y].projective) {
            // Radical summands of P: the walk with its top position removed.
            const Walk& w = module.word;
            std::size_t top = w.length() + 1;
            for (std::size_t i = 0; i <= w.length(); ++i) {
                bool incoming = (i > 0 && !w.letter(i - 1).inverse) || (i < w.length() && w.letter(i).inverse);
                if (!incoming) {
                    if (top != w.length() + 1) throw Error(ErrorCode::Inconsistency, "projective with two tops");
                    top = i;
                }
            }
            auto add_part = [&](std::size_t first, std::size_t last) {
                Walk part = w.slice(first, last);
                std::size_t x = g.index_of(part);
                std::vector<std::optional<std::size_t>> pos(part.length() + 1);
                for (std::size_t i = 0; i <= part.length(); ++i) pos[canonical_position(part, i)] = first + i;
                pending.push_back({x, y, position_map(g.nodes_[x].module, module, pos, field.one())});
            };
            if (top > 0) add_part(0, top - 1);
            if (top < w.length()) add_part(top + 1, w.length());
            continue;
        }
        AlmostSplitSequence s = ar_sequence(p, module, SequenceSide::EndingAt, field);
        std::size_t x = g.index_of(s.left.word);
        g.nodes_[y].tau = x;
        if (g.nodes_[x].tau_inverse) throw Error(ErrorCode::Inconsistency, "tau is not injective");
        g.nodes_[x].tau_inverse = y;
        for (std::size_t i = 0; i < s.middle.size(); ++i)
            pending.push_back({g.index_of(s.middle[i].word), y, s.right_maps[i]});
        g.meshes_.emplace(y, std::move(s));
    }
    std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    g.out_.assign(g.nodes_.size(), {});
    g.in_.assign(g.nodes_.size(), {});
    for (auto& e : pending) {
        g.out_[e.source].push_back(g.arrows_.size());
        g.in_[e.target].push_back(g.arrows_.size());
        g.arrows_.push_back({e.source, e.target, std::move(e.map)});
    }
    // Every non-injective node must be the start of a mesh with the same arrows out.
    for (std::size_t x = 0; x < g.nodes_.size(); ++x) {
        if (g.nodes_[x].injective != !g.nodes_[x].tau_inverse.has_value())
            throw Error(ErrorCode::Inconsistency, "tau pairing disagrees with injectivity at " + g.label(x));
        if (!g.nodes_[x].tau_inverse) continue;
        const AlmostSplitSequence* s = g.mesh(*g.nodes_[x].tau_inverse);
        std::vector<std::size_t> mids, outs;
        for (const auto& mid : s->middle) mids.push_back(g.index_of(mid.word));
        for (auto a : g.out_[x]) outs.push_back(g.arrows_[a].target);
        std::sort(mids.begin(), mids.end());
        if (mids != outs) throw Error(ErrorCode::Inconsistency, "mesh symmetry fails at " + g.label(x));
    }
    return g;
}

TauOrbit tau_orbit(const Presentation& p, const StringModule& m, std::size_t steps, const Field& field) {
    TauOrbit orbit;
    orbit.modules.push_back(m);
    for (std::size_t k = 0; k < steps; ++k) {
        const StringModule& cur = orbit.modules.back();
        if (is_projective_word(p, cur.word)) break;
        StringModule next = tau(p, cur, field);
        if (!is_isomorphic(p, tau_oracle(p, cur.rep), next.rep))
            throw Error(ErrorCode::Inconsistency, "tau surgery disagrees with the oracle at " + format_walk(p, cur.word));
        orbit.modules.push_back(std::move(next));
    }
    if (is_projective_word(p, orbit.modules.back().word)) {
        orbit.stopped_at_projective = true;
        orbit.note = "reached projective " + format_walk(p, orbit.modules.back().word) + " after " +
                     std::to_string(orbit.modules.size() - 1) + " steps";
    }
    return orbit;
}

} // namespace stringalg
