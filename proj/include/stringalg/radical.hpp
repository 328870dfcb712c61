#pragma once

#include "stringalg/artheory.hpp"

#include <optional>
#include <vector>

namespace stringalg {

// Radical depth of a morphism; `zero` marks the zero morphism (below all layers).
struct Depth {
    bool zero = false;
    std::size_t value = 0;

    static Depth of_zero() { return {true, 0}; }
    // Zero counts as arbitrarily deep.
    bool at_least(std::size_t n) const { return zero || value >= n; }
    bool at_most(std::size_t n) const { return !zero && value <= n; }
    friend bool operator==(const Depth&, const Depth&) = default;
};

struct RadicalProfile {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> dims; // dim of layer n, ending with the first zero layer
};

enum class DegreeSide { Left, Right };

struct Degree {
    bool infinite = false;
    std::size_t value = 0;
    std::optional<std::size_t> witness_node;
    std::optional<MorphismMatrix> witness_map;
};

// Layers R^n(X,Y) for every pair of nodes of a knitted quiver, by the
// definitional recursion R^{n+1}(X,Y) = sum_Z R(Z,Y) o R^n(X,Z).
class RadicalStructure {
public:
    explicit RadicalStructure(const ARQuiver& quiver);

    const ARQuiver& quiver() const noexcept { return *quiver_; }
    const HomBasis& hom(std::size_t x, std::size_t y) const { return homs_.at(x * n_ + y); }

    // Layer n of Hom(x, y); the zero subspace past the nilpotency index.
    const Subspace& layer(std::size_t x, std::size_t y, std::size_t n) const;
    // Least N with R^N = 0 for all pairs.
    std::size_t nilpotency() const noexcept { return nilpotency_; }

    RadicalProfile profile(std::size_t x, std::size_t y) const;
    Depth depth(std::size_t x, std::size_t y, const MorphismMatrix& f) const; // NotIntertwining on bad input

    Degree degree(std::size_t x, std::size_t y, const MorphismMatrix& f, DegreeSide side,
                  std::optional<std::size_t> bound = std::nullopt) const;

private:
    const ARQuiver* quiver_;
    std::size_t n_;
    std::vector<HomBasis> homs_;
    std::vector<std::vector<Subspace>> layers_; // per pair, layers 0 .. last nonzero
    std::vector<Subspace> zero_;                // per pair
    std::size_t nilpotency_ = 0;
};

// R^n as sums of spans of length-k composites of the chosen irreducible maps
// (k >= n). Indexed [x * size + y][n], ending with the zero layer.
std::vector<std::vector<Subspace>> path_span_layers(const ARQuiver& quiver);

enum class CountingSide { Ending, Starting };

struct CountingQuiver {
    CountingSide side = CountingSide::Ending;
    std::size_t vertex = 0;
    std::vector<Walk> strings;
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
};

// Strings C with e(C) = u ending in a direct letter or trivial (Ending), or
// s(C) = u starting with a direct letter or trivial (Starting).
CountingQuiver cg_quiver(const Presentation& p, std::size_t u, CountingSide side,
                         std::optional<std::size_t> max_len = std::nullopt);

} // namespace stringalg
