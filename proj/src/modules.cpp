#include "stringalg/modules.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <random>

namespace stringalg {

std::size_t Representation::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims) t += d;
    return t;
}

Representation zero_representation(const Presentation& p) {
    Representation r;
    r.dims.assign(p.vertex_count(), 0);
    r.maps.assign(p.arrow_count(), Matrix());
    return r;
}

bool is_valid_representation(const Presentation& p, const Representation& m) {
    if (m.dims.size() != p.vertex_count() || m.maps.size() != p.arrow_count()) return false;
    for (std::size_t a = 0; a < p.arrow_count(); ++a)
        if (m.maps[a].rows() != m.dims[p.arrow(a).target] || m.maps[a].cols() != m.dims[p.arrow(a).source])
            return false;
    for (const auto& r : p.relations()) {
        Matrix acc = m.maps[r.front()];
        for (std::size_t i = 1; i < r.size(); ++i) acc = m.maps[r[i]] * acc;
        if (!acc.is_zero()) return false;
    }
    return true;
}

MorphismMatrix zero_morphism(const Representation& source, const Representation& target) {
    if (source.dims.size() != target.dims.size()) throw Error(ErrorCode::ShapeMismatch, "representations of different quivers");
    MorphismMatrix f;
    for (std::size_t v = 0; v < source.dims.size(); ++v) f.blocks.emplace_back(target.dims[v], source.dims[v]);
    return f;
}

MorphismMatrix identity_morphism(const Representation& m, const Scalar& one) {
    MorphismMatrix f;
    for (auto d : m.dims) f.blocks.push_back(Matrix::identity(d, one));
    return f;
}

bool is_intertwiner(const Presentation& p, const Representation& source, const Representation& target,
                    const MorphismMatrix& f) {
    if (f.blocks.size() != p.vertex_count()) return false;
    for (std::size_t v = 0; v < p.vertex_count(); ++v)
        if (f.blocks[v].rows() != target.dims[v] || f.blocks[v].cols() != source.dims[v]) return false;
    for (std::size_t a = 0; a < p.arrow_count(); ++a) {
        std::size_t s = p.arrow(a).source, t = p.arrow(a).target;
        if (!(f.blocks[t] * source.maps[a] == target.maps[a] * f.blocks[s])) return false;
    }
    return true;
}

void require_intertwiner(const Presentation& p, const Representation& source, const Representation& target,
                         const MorphismMatrix& f) {
    if (!is_intertwiner(p, source, target, f)) throw Error(ErrorCode::NotIntertwining, "morphism does not intertwine");
}

bool is_zero(const MorphismMatrix& f) {
    return std::all_of(f.blocks.begin(), f.blocks.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool is_injective(const MorphismMatrix& f) {
    return std::all_of(f.blocks.begin(), f.blocks.end(), [](const Matrix& m) { return rank(m) == m.cols(); });
}

bool is_surjective(const MorphismMatrix& f) {
    return std::all_of(f.blocks.begin(), f.blocks.end(), [](const Matrix& m) { return rank(m) == m.rows(); });
}

bool is_isomorphism(const MorphismMatrix& f) { return is_injective(f) && is_surjective(f); }

MorphismMatrix operator+(const MorphismMatrix& a, const MorphismMatrix& b) {
    if (a.blocks.size() != b.blocks.size()) throw Error(ErrorCode::ShapeMismatch, "morphism sum shape mismatch");
    MorphismMatrix r;
    for (std::size_t v = 0; v < a.blocks.size(); ++v) r.blocks.push_back(a.blocks[v] + b.blocks[v]);
    return r;
}

MorphismMatrix operator*(const Scalar& s, const MorphismMatrix& f) {
    MorphismMatrix r;
    for (const auto& b : f.blocks) r.blocks.push_back(s * b);
    return r;
}

std::size_t hom_ambient(const Representation& source, const Representation& target) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < source.dims.size(); ++v) n += source.dims[v] * target.dims[v];
    return n;
}

Vector flatten(const MorphismMatrix& f) {
    Vector out;
    for (const auto& b : f.blocks) out.insert(out.end(), b.data().begin(), b.data().end());
    return out;
}

MorphismMatrix unflatten(const Vector& v, const Representation& source, const Representation& target) {
    if (v.size() != hom_ambient(source, target)) throw Error(ErrorCode::ShapeMismatch, "flattened morphism has wrong length");
    MorphismMatrix f;
    std::size_t k = 0;
    for (std::size_t x = 0; x < source.dims.size(); ++x) {
        Matrix b(target.dims[x], source.dims[x]);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = v[k++];
        f.blocks.push_back(std::move(b));
    }
    return f;
}

HomBasis hom_basis(const Presentation& p, const Representation& source, const Representation& target) {
    const std::size_t nv = p.vertex_count();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + source.dims[v] * target.dims[v];
    const std::size_t ambient = offset[nv];
    auto var = [&](std::size_t v, std::size_t i, std::size_t j) { return offset[v] + i * source.dims[v] + j; };

    std::size_t equations = 0;
    for (std::size_t a = 0; a < p.arrow_count(); ++a)
        equations += target.dims[p.arrow(a).target] * source.dims[p.arrow(a).source];
    Matrix system(equations, ambient);
    std::size_t row = 0;
    for (std::size_t a = 0; a < p.arrow_count(); ++a) {
        std::size_t s = p.arrow(a).source, t = p.arrow(a).target;
        const Matrix& ma = source.maps[a];
        const Matrix& na = target.maps[a];
        // (F_t M_a - N_a F_s)[i][j] = 0
        for (std::size_t i = 0; i < target.dims[t]; ++i)
            for (std::size_t j = 0; j < source.dims[s]; ++j, ++row) {
                for (std::size_t k = 0; k < source.dims[t]; ++k)
                    if (!ma(k, j).is_zero()) system(row, var(t, i, k)) += ma(k, j);
                for (std::size_t k = 0; k < target.dims[s]; ++k)
                    if (!na(i, k).is_zero()) system(row, var(s, k, j)) -= na(i, k);
            }
    }
    Subspace space = Subspace::span(ambient, kernel(system));
    HomBasis h;
    h.ambient = ambient;
    h.coordinates = space.basis();
    for (const auto& c : h.coordinates) h.basis.push_back(unflatten(c, source, target));
    return h;
}

MorphismMatrix compose(const MorphismMatrix& g, const MorphismMatrix& f) {
    if (g.blocks.size() != f.blocks.size()) throw Error(ErrorCode::ShapeMismatch, "composition of incompatible morphisms");
    MorphismMatrix r;
    for (std::size_t v = 0; v < f.blocks.size(); ++v) r.blocks.push_back(g.blocks[v] * f.blocks[v]);
    return r;
}

MorphismMatrix compose_chain(const std::vector<MorphismMatrix>& chain) {
    if (chain.empty()) throw Error(ErrorCode::ShapeMismatch, "empty chain");
    MorphismMatrix acc = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) acc = compose(chain[i], acc);
    return acc;
}

bool is_isomorphic(const Presentation& p, const Representation& m, const Representation& n) {
    if (m.dims != n.dims) return false;
    HomBasis forward = hom_basis(p, m, n);
    if (forward.dimension() == 0) return m.total_dim() == 0;
    if (hom_basis(p, n, m).dimension() != forward.dimension()) return false;
    for (const auto& f : forward.basis)
        if (is_isomorphism(f)) return true;
    MorphismMatrix sum = forward.basis.front();
    for (std::size_t i = 1; i < forward.dimension(); ++i) sum = sum + forward.basis[i];
    if (is_isomorphism(sum)) return true;
    std::mt19937 gen(20240917U);
    std::uniform_int_distribution<int> coeff(-7, 7);
    for (int attempt = 0; attempt < 16; ++attempt) {
        MorphismMatrix combo = zero_morphism(m, n);
        for (const auto& f : forward.basis) combo = combo + Scalar(coeff(gen)) * f;
        if (is_isomorphism(combo)) return true;
    }
    return false;
}

namespace {

// Coordinates of x in an echelon basis: its entries at the pivot columns.
Vector echelon_coordinates(const std::vector<Vector>& basis, const Vector& x) {
    Vector c;
    for (const auto& row : basis) {
        std::size_t pivot = 0;
        while (row[pivot].is_zero()) ++pivot;
        c.push_back(x[pivot]);
    }
    return c;
}

Matrix full_matrix(const MorphismMatrix& f) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : f.blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : f.blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

// Unique eigenvalue of x, assuming x = lambda + nilpotent. If the minimal
// polynomial is (t - lambda)^s with s = q b, q a power of the characteristic
// and b prime to it, the coefficient of t^(q(b-1)) is -b lambda^q = -b lambda.
Scalar unique_eigenvalue(const Matrix& x, std::uint32_t characteristic) {
    const std::size_t n = x.rows();
    Subspace powers(n * n);
    std::vector<Matrix> seq{Matrix::identity(n)};
    std::vector<Vector> flat;
    while (true) {
        const Matrix& last = seq.back();
        if (!powers.add(last.data())) break;
        flat.push_back(last.data());
        seq.push_back(last * x);
    }
    std::size_t s = flat.size();
    Matrix a(n * n, s);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < n * n; ++i) a(i, k) = flat[k][i];
    auto c = solve(a, seq.back().data()); // x^s = sum c_k x^k
    if (!c) throw Error(ErrorCode::Inconsistency, "minimal polynomial computation failed");
    std::size_t q = 1, b = s;
    if (characteristic != 0)
        while (b % characteristic == 0) {
            b /= characteristic;
            q *= characteristic;
        }
    // monic coefficient at t^(q(b-1)) is -c_k
    Scalar coeff = -(*c)[q * (b - 1)];
    return -coeff / Scalar(static_cast<std::int64_t>(b));
}

} // namespace

Subspace end_radical(const Presentation& p, const Representation& m) {
    HomBasis e = hom_basis(p, m, m);
    const std::size_t d = e.dimension();
    Subspace rad(e.ambient);
    if (d == 0) return rad;
    std::uint32_t characteristic = 0;
    for (const auto& mat : m.maps)
        for (const auto& s : mat.data())
            if (s.characteristic() != 0) characteristic = s.characteristic();

    std::vector<Vector> kernel_coeffs;
    if (characteristic == 0) {
        // Left multiplication matrices in the echelon basis, then the trace form.
        std::vector<Matrix> left(d, Matrix(d, d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Vector c = echelon_coordinates(e.coordinates, flatten(compose(e.basis[i], e.basis[j])));
                for (std::size_t k = 0; k < d; ++k) left[i](k, j) = c[k];
            }
        Matrix form(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                Matrix prod = left[i] * left[j];
                Scalar tr;
                for (std::size_t k = 0; k < d; ++k) tr += prod(k, k);
                form(i, j) = tr;
                form(j, i) = tr;
            }
        kernel_coeffs = kernel(form);
    } else {
        // Local endomorphism ring with residue field k: the radical is the
        // kernel of the eigenvalue functional.
        Matrix functional(1, d);
        for (std::size_t i = 0; i < d; ++i) functional(0, i) = unique_eigenvalue(full_matrix(e.basis[i]), characteristic);
        kernel_coeffs = kernel(functional);
    }
    for (const auto& a : kernel_coeffs) {
        Vector v(e.ambient);
        for (std::size_t i = 0; i < d; ++i)
            if (!a[i].is_zero())
                for (std::size_t k = 0; k < e.ambient; ++k) v[k] += a[i] * e.coordinates[i][k];
        rad.add(v);
    }
    if (characteristic != 0) {
        for (const auto& v : rad.basis()) {
            Matrix x = full_matrix(unflatten(v, m, m));
            Matrix power = x;
            for (std::size_t k = 1; k < x.rows(); ++k) power = power * x;
            if (!power.is_zero())
                throw Error(ErrorCode::Inconsistency, "endomorphism ring is not local over the prime field");
        }
    }
    return rad;
}

StringModule realize(const Presentation& p, const Walk& w, const Field& field) {
    StringCheck check = check_string(p, w);
    if (!check.ok)
        throw Error(ErrorCode::InvalidWalk, "not a string (" + check.reason + " at letter " + std::to_string(check.index) + ")");
    StringModule m;
    m.word = w;
    m.rep.dims.assign(p.vertex_count(), 0);
    m.local.resize(w.length() + 1);
    for (std::size_t i = 0; i <= w.length(); ++i) m.local[i] = m.rep.dims[w.vertices()[i]]++;
    for (std::size_t a = 0; a < p.arrow_count(); ++a)
        m.rep.maps.emplace_back(m.rep.dims[p.arrow(a).target], m.rep.dims[p.arrow(a).source]);
    const Scalar one = field.one();
    for (std::size_t i = 1; i <= w.length(); ++i) {
        Letter l = w.letter(i - 1);
        std::size_t from = l.inverse ? i : i - 1;
        std::size_t to = l.inverse ? i - 1 : i;
        m.rep.maps[l.arrow](m.local[to], m.local[from]) = one;
    }
    return m;
}

namespace {

// Maximal nonzero path beginning with arrow a (forward) or ending with it (backward).
Path maximal_path(const Presentation& p, std::size_t a, bool forward) {
    Path path{a};
    while (true) {
        bool extended = false;
        if (forward) {
            for (auto b : p.arrows_from(p.arrow(path.back()).target)) {
                path.push_back(b);
                if (!p.contains_relation(path)) {
                    extended = true;
                    break;
                }
                path.pop_back();
            }
        } else {
            for (auto b : p.arrows_to(p.arrow(path.front()).source)) {
                path.insert(path.begin(), b);
                if (!p.contains_relation(path)) {
                    extended = true;
                    break;
                }
                path.erase(path.begin());
            }
        }
        if (!extended) return path;
        if (path.size() > 4 * p.arrow_count() + 4 && nonzero_path_count(p).infinite)
            throw Error(ErrorCode::OutOfRange, "infinite-dimensional projective or injective");
    }
}

std::vector<Letter> as_letters(const Path& path, bool inverse) {
    std::vector<Letter> out;
    if (inverse)
        for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back({*it, true});
    else
        for (auto a : path) out.push_back({a, false});
    return out;
}

} // namespace

Walk standard_word(const Presentation& p, std::size_t v, StandardKind kind) {
    if (v >= p.vertex_count()) throw Error(ErrorCode::UnknownLabel, "vertex out of range");
    if (kind == StandardKind::Simple) return Walk::trivial(v);
    bool proj = kind == StandardKind::Projective;
    const auto& arrows = proj ? p.arrows_from(v) : p.arrows_to(v);
    if (arrows.size() > 2) throw Error(ErrorCode::Inconsistency, "not a string algebra at vertex " + p.vertex_name(v));
    if (arrows.empty()) return Walk::trivial(v);
    std::vector<Path> paths;
    for (auto a : arrows) paths.push_back(maximal_path(p, a, proj));
    std::vector<Letter> letters;
    if (proj) {
        // C_1 C_2 with C_1 inverse ending at v and C_2 direct starting at v
        if (paths.size() == 2) letters = as_letters(paths[1], true);
        auto tail = as_letters(paths[0], false);
        letters.insert(letters.end(), tail.begin(), tail.end());
    } else {
        letters = as_letters(paths[0], false);
        if (paths.size() == 2) {
            auto tail = as_letters(paths[1], true);
            letters.insert(letters.end(), tail.begin(), tail.end());
        }
    }
    return canonicalize(Walk::make(p, std::move(letters)));
}

StringModule standard_module(const Presentation& p, std::size_t v, StandardKind kind, const Field& field) {
    return realize(p, standard_word(p, v, kind), field);
}

namespace {

Representation path_representation(const Presentation& p, std::size_t v, const Field& field, bool projective) {
    std::vector<VertexPath> basis;
    for (auto& path : nonzero_paths(p))
        if ((projective ? path.start : path_end(p, path)) == v) basis.push_back(path);
    Representation r;
    r.dims.assign(p.vertex_count(), 0);
    std::vector<std::size_t> local(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::size_t at = projective ? path_end(p, basis[i]) : basis[i].start;
        local[i] = r.dims[at]++;
    }
    for (std::size_t a = 0; a < p.arrow_count(); ++a) r.maps.emplace_back(r.dims[p.arrow(a).target], r.dims[p.arrow(a).source]);
    const Scalar one = field.one();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Path& from = basis[i].arrows;
            const Path& to = basis[j].arrows;
            if (projective) {
                // q -> q a
                if (to.size() == from.size() + 1 && basis[i].start == basis[j].start &&
                    std::equal(from.begin(), from.end(), to.begin()))
                    r.maps[to.back()](local[j], local[i]) = one;
            } else {
                // q* -> q'* when q = a q'
                if (from.size() == to.size() + 1 && std::equal(to.begin(), to.end(), from.begin() + 1) &&
                    basis[j].start == p.arrow(from.front()).target)
                    r.maps[from.front()](local[j], local[i]) = one;
            }
        }
    return r;
}

} // namespace

Representation projective_representation(const Presentation& p, std::size_t v, const Field& field) {
    return path_representation(p, v, field, true);
}

Representation injective_representation(const Presentation& p, std::size_t v, const Field& field) {
    return path_representation(p, v, field, false);
}

MorphismMatrix position_map(const StringModule& source, const StringModule& target,
                            const std::vector<std::optional<std::size_t>>& map, const Scalar& coeff) {
    MorphismMatrix f = zero_morphism(source.rep, target.rep);
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (!map[i]) continue;
        std::size_t v = source.position_vertex(i);
        if (target.position_vertex(*map[i]) != v) throw Error(ErrorCode::ShapeMismatch, "position map changes vertex");
        f.blocks[v](target.local[*map[i]], source.local[i]) = coeff;
    }
    return f;
}

} // namespace stringalg
