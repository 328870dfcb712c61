#include "stringalg/radical.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <functional>

namespace stringalg {

namespace {

Vector compose_flat(const Vector& g, const Vector& f, const Representation& x, const Representation& z, const Representation& y) {
    return flatten(compose(unflatten(g, z, y), unflatten(f, x, z)));
}

} // namespace

RadicalStructure::RadicalStructure(const ARQuiver& quiver) : quiver_(&quiver), n_(quiver.size()) {
    const Presentation& p = quiver.presentation();
    const auto& nodes = quiver.nodes();
    homs_.reserve(n_ * n_);
    layers_.resize(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) {
            homs_.push_back(hom_basis(p, nodes[x].module.rep, nodes[y].module.rep));
            zero_.emplace_back(homs_.back().ambient);
        }
    std::vector<Subspace> current(n_ * n_), first(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) {
            std::size_t k = x * n_ + y;
            layers_[k].push_back(Subspace::span(homs_[k].ambient, homs_[k].coordinates));
            first[k] = x == y ? end_radical(p, nodes[x].module.rep) : layers_[k][0];
            layers_[k].push_back(first[k]);
        }
    current = first;
    const std::size_t cap = 8 * n_ + 16;
    std::size_t level = 1;
    auto all_zero = [&](const std::vector<Subspace>& s) {
        return std::all_of(s.begin(), s.end(), [](const Subspace& v) { return v.dim() == 0; });
    };
    while (!all_zero(current)) {
        if (++level > cap) throw Error(ErrorCode::Inconsistency, "radical filtration does not terminate");
        std::vector<Subspace> next;
        next.reserve(n_ * n_);
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t y = 0; y < n_; ++y) {
                Subspace s(homs_[x * n_ + y].ambient);
                for (std::size_t z = 0; z < n_; ++z) {
                    const Subspace& inner = current[x * n_ + z];
                    const Subspace& outer = first[z * n_ + y];
                    if (inner.dim() == 0 || outer.dim() == 0) continue;
                    for (const auto& f : inner.basis())
                        for (const auto& g : outer.basis())
                            s.add(compose_flat(g, f, nodes[x].module.rep, nodes[z].module.rep, nodes[y].module.rep));
                }
                next.push_back(std::move(s));
            }
        for (std::size_t k = 0; k < n_ * n_; ++k) layers_[k].push_back(next[k]);
        current = std::move(next);
    }
    nilpotency_ = level;
    // Trim trailing zero layers beyond the first one per pair.
    for (auto& l : layers_)
        while (l.size() >= 2 && l.back().dim() == 0 && l[l.size() - 2].dim() == 0) l.pop_back();
}

const Subspace& RadicalStructure::layer(std::size_t x, std::size_t y, std::size_t n) const {
    const auto& l = layers_.at(x * n_ + y);
    return n < l.size() ? l[n] : zero_[x * n_ + y];
}

RadicalProfile RadicalStructure::profile(std::size_t x, std::size_t y) const {
    if (x >= n_ || y >= n_) throw Error(ErrorCode::NodeAbsent, "node index out of range");
    RadicalProfile r{x, y, {}};
    for (std::size_t n = 0;; ++n) {
        r.dims.push_back(layer(x, y, n).dim());
        if (r.dims.back() == 0) break;
    }
    return r;
}

Depth RadicalStructure::depth(std::size_t x, std::size_t y, const MorphismMatrix& f) const {
    if (x >= n_ || y >= n_) throw Error(ErrorCode::NodeAbsent, "node index out of range");
    const Presentation& p = quiver_->presentation();
    require_intertwiner(p, quiver_->node(x).module.rep, quiver_->node(y).module.rep, f);
    if (is_zero(f)) return Depth::of_zero();
    Vector v = flatten(f);
    std::size_t n = 0;
    while (layer(x, y, n + 1).contains(v)) ++n;
    return {false, n};
}

Degree RadicalStructure::degree(std::size_t x, std::size_t y, const MorphismMatrix& f, DegreeSide side,
                                std::optional<std::size_t> bound) const {
    Depth d = depth(x, y, f);
    if (d.zero || d.value != 1) throw Error(ErrorCode::NotIrreducible, "degree needs an irreducible morphism");
    const auto& nodes = quiver_->nodes();
    const std::size_t limit = bound.value_or(nilpotency_);
    for (std::size_t m = 1; m <= limit; ++m) {
        for (std::size_t z = 0; z < n_; ++z) {
            // Left: g : Z -> X with f g deep. Right: g : Y -> Z with g f deep.
            std::size_t gs = side == DegreeSide::Left ? z : y;
            std::size_t gt = side == DegreeSide::Left ? x : z;
            std::size_t cs = side == DegreeSide::Left ? z : x;
            std::size_t ct = side == DegreeSide::Left ? y : z;
            const Subspace& candidates = layer(gs, gt, m);
            if (candidates.dim() == 0) continue;
            const Subspace& deep = layer(cs, ct, m + 2);
            const auto& basis = candidates.basis();
            Matrix residues(homs_[cs * n_ + ct].ambient, basis.size());
            for (std::size_t i = 0; i < basis.size(); ++i) {
                MorphismMatrix g = unflatten(basis[i], nodes[gs].module.rep, nodes[gt].module.rep);
                MorphismMatrix c = side == DegreeSide::Left ? compose(f, g) : compose(g, f);
                Vector r = deep.residue(flatten(c));
                for (std::size_t k = 0; k < r.size(); ++k) residues(k, i) = r[k];
            }
            const Subspace& next = layer(gs, gt, m + 1);
            for (const auto& coeffs : kernel(residues)) {
                Vector g(candidates.ambient());
                for (std::size_t i = 0; i < basis.size(); ++i)
                    if (!coeffs[i].is_zero())
                        for (std::size_t k = 0; k < g.size(); ++k) g[k] += coeffs[i] * basis[i][k];
                if (!next.contains(g))
                    return {false, m, z, unflatten(g, nodes[gs].module.rep, nodes[gt].module.rep)};
            }
        }
    }
    return {true, 0, std::nullopt, std::nullopt};
}

std::vector<std::vector<Subspace>> path_span_layers(const ARQuiver& quiver) {
    const std::size_t n = quiver.size();
    const auto& nodes = quiver.nodes();
    std::vector<std::size_t> ambient(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) ambient[x * n + y] = hom_ambient(nodes[x].module.rep, nodes[y].module.rep);

    // spans[k][pair]: span of composites of exactly k arrow maps.
    std::vector<std::vector<Subspace>> spans;
    std::vector<Subspace> cur;
    for (std::size_t k = 0; k < n * n; ++k) cur.emplace_back(ambient[k]);
    for (std::size_t x = 0; x < n; ++x) cur[x * n + x].add(flatten(identity_morphism(nodes[x].module.rep)));
    const std::size_t cap = 8 * n + 16;
    while (true) {
        bool nonzero = std::any_of(cur.begin(), cur.end(), [](const Subspace& s) { return s.dim() > 0; });
        if (!nonzero) break;
        if (spans.size() > cap) throw Error(ErrorCode::Inconsistency, "path spans do not vanish");
        std::vector<Subspace> next;
        for (std::size_t k = 0; k < n * n; ++k) next.emplace_back(ambient[k]);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z) {
                const Subspace& s = cur[x * n + z];
                if (s.dim() == 0) continue;
                for (auto a : quiver.arrows_from(z)) {
                    const auto& arrow = quiver.arrows()[a];
                    for (const auto& v : s.basis()) {
                        MorphismMatrix c = compose(arrow.map, unflatten(v, nodes[x].module.rep, nodes[z].module.rep));
                        next[x * n + arrow.target].add(flatten(c));
                    }
                }
            }
        spans.push_back(std::move(cur));
        cur = std::move(next);
    }
    std::vector<std::vector<Subspace>> layers(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        std::vector<Subspace> suffix(spans.size() + 1, Subspace(ambient[k]));
        for (std::size_t i = spans.size(); i-- > 0;) {
            suffix[i] = suffix[i + 1];
            suffix[i].add_all(spans[i][k]);
        }
        std::size_t last = 0;
        while (last < spans.size() && suffix[last].dim() > 0) ++last;
        layers[k].assign(suffix.begin(), suffix.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    }
    return layers;
}

CountingQuiver cg_quiver(const Presentation& p, std::size_t u, CountingSide side, std::optional<std::size_t> max_len) {
    if (u >= p.vertex_count()) throw Error(ErrorCode::UnknownLabel, "vertex out of range");
    const std::size_t limit = max_len.value_or(band_free_length_bound(p));
    CountingQuiver q;
    q.side = side;
    q.vertex = u;
    const bool ending = side == CountingSide::Ending;
    // All strings starting at u, by appending; inverted for the ending side.
    std::vector<Walk> found;
    std::function<void(const Walk&)> grow = [&](const Walk& w) {
        Walk c = ending ? w.inverse() : w;
        bool keep = c.is_trivial() || (ending ? !c.letters().back().inverse : !c.letters().front().inverse);
        if (keep) found.push_back(c);
        if (w.length() >= limit) return;
        for (bool inv : {false, true})
            for (auto l : append_candidates(p, w, inv)) grow(w.appended(p, l));
    };
    grow(Walk::trivial(u));
    std::sort(found.begin(), found.end(), walk_less);
    q.strings = found;
    auto index = [&](const Walk& w) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < q.strings.size(); ++i)
            if (q.strings[i] == w) return i;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < q.strings.size(); ++i) {
        const Walk& c = q.strings[i];
        for (std::size_t b = 0; b < p.arrow_count(); ++b) {
            std::optional<Walk> reduced;
            if (ending) {
                // beta^-1 C
                if (p.arrow(b).source != c.start()) continue;
                if (!c.is_trivial() && c.letters().front() == Letter{b, false})
                    reduced = c.slice(1, c.length());
                else
                    reduced = c.prepended(p, {b, true});
            } else {
                // C beta
                if (p.arrow(b).source != c.end()) continue;
                if (!c.is_trivial() && c.letters().back() == Letter{b, true})
                    reduced = c.slice(0, c.length() - 1);
                else
                    reduced = c.appended(p, {b, false});
            }
            if (auto j = index(*reduced)) q.arrows.emplace_back(i, *j);
        }
    }
    return q;
}

} // namespace stringalg
