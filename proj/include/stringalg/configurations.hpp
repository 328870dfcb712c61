#pragma once

#include "stringalg/artheory.hpp"
#include "stringalg/radical.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stringalg {

enum class PatternId { Q1, Q2, Q3, Q4, LoopOut, LoopIn };

std::string pattern_name(PatternId id);

struct PatternCondition {
    std::string name;
    bool passed = true;
};

struct PatternMatch {
    PatternId id = PatternId::Q1;
    std::vector<std::pair<std::string, std::size_t>> vertices; // pattern vertex -> quiver vertex
    std::vector<std::pair<std::string, std::size_t>> arrows;   // pattern arrow -> quiver arrow
    std::size_t m = 0;                                         // gamma path length (Q3, Q4)
    std::vector<PatternCondition> conditions;
};

// All bindings of the six local patterns whose side conditions hold.
std::vector<PatternMatch> detect_local_patterns(const Presentation& p);

struct TauArrow {
    std::size_t module = 0; // node of M
    std::size_t tau = 0;    // node of tau M
};

// Pairs (M, tau M) joined by an irreducible arrow M -> tau M.
std::vector<TauArrow> find_tau_arrows(const ARQuiver& quiver);

struct LocalTauArrow {
    Walk module;
    Walk tau;
};

// Banded case: checks each candidate locally through the mesh ending at tau M.
std::vector<LocalTauArrow> find_tau_arrows(const Presentation& p, const std::vector<Walk>& candidates,
                                           const Field& field = {});

// Candidate modules suggested by the pattern matches: I_a for Q2/Q3, I_x for Q1,
// tau^-1 P_a for Q1/Q4, tau^-1 P_x for Q2.
std::vector<Walk> pattern_candidates(const Presentation& p, const std::vector<PatternMatch>& matches);

struct ThreeCycle {
    std::vector<std::size_t> nodes;  // x, y, z with x minimal
    std::vector<std::size_t> arrows; // x->y, y->z, z->x
};

std::vector<ThreeCycle> find_three_cycles(const ARQuiver& quiver);

struct PathClass {
    bool sectional = true;
    bool presectional = true;
    bool left_almost_presectional = false;
    bool right_almost_presectional = false;
};

// Throws InvalidWalk unless consecutive nodes are joined by arrows.
PathClass path_class(const ARQuiver& quiver, const std::vector<std::size_t>& path);

// tau-period of a tau-stable node, nullopt when the orbit reaches a projective.
std::optional<std::size_t> tau_period(const ARQuiver& quiver, std::size_t node);

struct TripleVerdict {
    Depth composite;
    Depth first_pair;  // h2 h1
    Depth second_pair; // h3 h2
};

struct TripleReport {
    std::vector<std::size_t> path; // arrow indices
    std::size_t samples = 0;
    std::vector<TripleVerdict> verdicts;
    std::vector<std::size_t> counterexamples; // sample indices violating (A)
    std::vector<std::size_t> violations;      // sample indices violating (B)
};

struct AuditEntry {
    std::string id;
    std::string description;
    bool passed = true;
    std::vector<std::string> details;
};

struct AuditReport {
    std::string algebra;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t nodes = 0;
    std::size_t arrows = 0;
    std::vector<TripleReport> triples;
    std::vector<AuditEntry> audits; // A, B, C, D, tau-period
    bool passed() const;
};

struct AuditOptions {
    std::size_t samples = 32;
    std::uint64_t seed = 0;
    Field field{};
};

// Throws BandFound on banded input.
AuditReport audit_theorems(const Presentation& p, const AuditOptions& options = {});

// Same audits on an already knitted quiver.
AuditReport audit_theorems(const ARQuiver& quiver, const RadicalStructure& radical, const AuditOptions& options = {});

} // namespace stringalg
