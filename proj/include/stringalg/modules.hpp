#pragma once

#include "stringalg/matrix.hpp"
#include "stringalg/presentation.hpp"
#include "stringalg/strings.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace stringalg {

struct Representation {
    std::vector<std::size_t> dims; // per vertex
    std::vector<Matrix> maps;      // per arrow, dims[target] x dims[source]

    std::size_t total_dim() const;
    friend bool operator==(const Representation&, const Representation&) = default;
};

Representation zero_representation(const Presentation& p);

// Shapes match and every relation acts as zero.
bool is_valid_representation(const Presentation& p, const Representation& m);

// Block v maps source dims[v] to target dims[v].
struct MorphismMatrix {
    std::vector<Matrix> blocks;

    friend bool operator==(const MorphismMatrix&, const MorphismMatrix&) = default;
};

MorphismMatrix zero_morphism(const Representation& source, const Representation& target);
MorphismMatrix identity_morphism(const Representation& m, const Scalar& one = Scalar(1));

bool is_intertwiner(const Presentation& p, const Representation& source, const Representation& target,
                    const MorphismMatrix& f);
void require_intertwiner(const Presentation& p, const Representation& source, const Representation& target,
                         const MorphismMatrix& f); // throws NotIntertwining

bool is_zero(const MorphismMatrix& f);
bool is_injective(const MorphismMatrix& f);
bool is_surjective(const MorphismMatrix& f);
bool is_isomorphism(const MorphismMatrix& f);

MorphismMatrix operator+(const MorphismMatrix& a, const MorphismMatrix& b);
MorphismMatrix operator*(const Scalar& s, const MorphismMatrix& f);

// Flattened coordinates: blocks in vertex order, each row-major.
std::size_t hom_ambient(const Representation& source, const Representation& target);
Vector flatten(const MorphismMatrix& f);
MorphismMatrix unflatten(const Vector& v, const Representation& source, const Representation& target);

struct HomBasis {
    std::vector<MorphismMatrix> basis;
    std::vector<Vector> coordinates; // flattened basis, same order
    std::size_t ambient = 0;

    std::size_t dimension() const noexcept { return basis.size(); }
};

HomBasis hom_basis(const Presentation& p, const Representation& source, const Representation& target);

// [f_1, ..., f_k] with f_i : X_i -> X_{i+1}; returns f_k o ... o f_1.
MorphismMatrix compose_chain(const std::vector<MorphismMatrix>& chain);
MorphismMatrix compose(const MorphismMatrix& g, const MorphismMatrix& f); // g o f

bool is_isomorphic(const Presentation& p, const Representation& m, const Representation& n);

// Jacobson radical of End(m) as a subspace of flattened endomorphisms (trace-form kernel).
Subspace end_radical(const Presentation& p, const Representation& m);

// Position i of the walk lies over vertex vertices[i] and is basis vector
// local[i] of that vertex space. A direct letter c_i sends z_{i-1} to z_i.
struct StringModule {
    Walk word;
    Representation rep;
    std::vector<std::size_t> local;

    std::size_t position_vertex(std::size_t i) const { return word.vertices().at(i); }
};

StringModule realize(const Presentation& p, const Walk& w, const Field& field = {});

enum class StandardKind { Projective, Injective, Simple };

// Canonical string of P(v), I(v) or S(v).
Walk standard_word(const Presentation& p, std::size_t v, StandardKind kind);
StringModule standard_module(const Presentation& p, std::size_t v, StandardKind kind, const Field& field = {});

// Built from path bases, independent of strings: P(v) has basis the nonzero
// paths starting at v, I(v) the dual basis of nonzero paths ending at v.
Representation projective_representation(const Presentation& p, std::size_t v, const Field& field = {});
Representation injective_representation(const Presentation& p, std::size_t v, const Field& field = {});

// Graph map sending position i of source to coeff * position map[i] of target (or to 0).
MorphismMatrix position_map(const StringModule& source, const StringModule& target,
                            const std::vector<std::optional<std::size_t>>& map, const Scalar& coeff = Scalar(1));

} // namespace stringalg
