#pragma once

#include "stringalg/modules.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stringalg {

// Walk after a sequence of hook/cohook moves, with the image of every old position.
struct Surgery {
    Walk walk;
    std::vector<std::optional<std::size_t>> positions;
};

// Translate of a string word by surgery; nullopt when the module is
// projective (tau) or injective (tau inverse).
std::optional<Walk> tau_word(const Presentation& p, const Walk& w);
std::optional<Walk> tau_inverse_word(const Presentation& p, const Walk& w);

bool is_projective_word(const Presentation& p, const Walk& w);
bool is_injective_word(const Presentation& p, const Walk& w);

StringModule tau(const Presentation& p, const StringModule& m, const Field& field = {});         // IsProjective
StringModule tau_inverse(const Presentation& p, const StringModule& m, const Field& field = {}); // IsInjective

// DTr from a minimal projective presentation and the Nakayama functor.
Representation tau_oracle(const Presentation& p, const Representation& m);
bool has_projective_summand(const Presentation& p, const Representation& m);

enum class SequenceSide { EndingAt, StartingAt };

struct AlmostSplitSequence {
    StringModule left;
    StringModule right;
    std::vector<StringModule> middle;
    std::vector<MorphismMatrix> left_maps;  // left -> middle[i]
    std::vector<MorphismMatrix> right_maps; // middle[i] -> right
};

AlmostSplitSequence ar_sequence(const Presentation& p, const StringModule& m, SequenceSide side, const Field& field = {});

// Exactness, dimension count, intertwining and non-splitness; throws Inconsistency.
void verify_sequence(const Presentation& p, const AlmostSplitSequence& s);

class ARQuiver {
public:
    struct Node {
        StringModule module;
        bool projective = false;
        bool injective = false;
        std::optional<std::size_t> tau;
        std::optional<std::size_t> tau_inverse;

        const Walk& word() const { return module.word; }
    };

    struct Arrow {
        std::size_t source = 0;
        std::size_t target = 0;
        MorphismMatrix map;
    };

    ARQuiver(Presentation p, Field field) : presentation_(std::move(p)), field_(field) {}

    const Presentation& presentation() const noexcept { return presentation_; }
    const Field& field() const noexcept { return field_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    std::optional<std::size_t> find(const Walk& w) const;
    std::size_t index_of(const Walk& w) const; // throws NodeAbsent

    // Arrow indices leaving / entering a node, in canonical order.
    const std::vector<std::size_t>& arrows_from(std::size_t node) const { return out_.at(node); }
    const std::vector<std::size_t>& arrows_into(std::size_t node) const { return in_.at(node); }
    std::vector<std::size_t> arrows_between(std::size_t source, std::size_t target) const;

    // Mesh ending at a non-projective node.
    const AlmostSplitSequence* mesh(std::size_t node) const;

    std::string label(std::size_t node) const;

private:
    friend ARQuiver knit(const Presentation& p, const Field& field);

    Presentation presentation_;
    Field field_;
    std::vector<Node> nodes_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::map<std::size_t, AlmostSplitSequence> meshes_;
};

ARQuiver knit(const Presentation& p, const Field& field = {});

struct TauOrbit {
    std::vector<StringModule> modules; // M, tau M, ...
    bool stopped_at_projective = false;
    std::string note;
};

// Iterates tau surgery, checking every step against the oracle.
TauOrbit tau_orbit(const Presentation& p, const StringModule& m, std::size_t steps, const Field& field = {});

} // namespace stringalg
