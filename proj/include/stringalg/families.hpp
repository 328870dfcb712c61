#pragma once

#include "stringalg/artheory.hpp"
#include "stringalg/presentation.hpp"

#include <string>
#include <vector>

namespace stringalg {

enum class Family { W, U, V };

Family parse_family(const std::string& name); // throws OutOfRange

// W: params {n}, n >= 2, giving W(n).
// U: params {m, n}, m, n >= 2, giving U(m, n-1).
// V: params {m, n}, m >= 2, n >= 3, giving V(m, n-2).
struct FamilySpec {
    Family family = Family::W;
    std::vector<std::size_t> params;
    Presentation presentation;
};

FamilySpec make_family(Family family, const std::vector<std::size_t>& params);

// Sectional-path witness of a composite of n irreducibles with a prescribed radical depth.
struct FamilyWitness {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::size_t> path;           // node indices X_1 .. X_{n+1}
    std::vector<MorphismMatrix> chain;       // h_1 .. h_n
    std::vector<std::size_t> phi;            // nodes of phi (W: the prefix path)
    std::vector<std::size_t> rho;            // nodes of the cycle, first = last
    std::vector<std::size_t> tail;           // nodes N ~> I_{a_m}, empty for W
    std::vector<std::size_t> sectional_path; // P ~> L ~> S ~> L -> N ~> I for U and V
    std::vector<std::pair<std::string, std::size_t>> distinguished;
    std::size_t expected_depth = 0;
    std::size_t composite_depth = 0;
    std::size_t prefix_depth = 0; // h_{n-1} .. h_1
    std::size_t suffix_depth = 0; // h_n .. h_2
    bool verified = false;
};

class RadicalStructure;

// Builds and verifies the witness on a knitted quiver; throws Verification on failure.
FamilyWitness witness(const FamilySpec& spec, const ARQuiver& quiver, const RadicalStructure& radical);

} // namespace stringalg
