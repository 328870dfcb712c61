#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stringalg {

struct Arrow {
    std::string label;
    std::size_t source = 0;
    std::size_t target = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::optional<std::size_t> vertex_index(std::string_view id) const;
    std::optional<std::size_t> arrow_index(std::string_view label) const;

    friend bool operator==(const Quiver&, const Quiver&) = default;
};

// Arrow indices in diagram order: the first-traversed arrow comes first.
using Path = std::vector<std::size_t>;

struct ConditionResult {
    std::string id; // "1", "1'", "2", "2'", "3"
    bool passed = true;
    std::vector<std::string> offenders;

    friend bool operator==(const ConditionResult&, const ConditionResult&) = default;
};

struct ValidationReport {
    std::vector<ConditionResult> conditions;
    bool is_string_algebra = true;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Quiver with monomial relations. Immutable once built; the relation set is
// normalized so that no relation is a factor of another.
class Presentation {
public:
    Presentation(std::string name, Quiver quiver, std::vector<Path> relations);

    const std::string& name() const noexcept { return name_; }
    const Quiver& quiver() const noexcept { return quiver_; }
    const std::vector<Path>& relations() const noexcept { return relations_; }

    std::size_t vertex_count() const noexcept { return quiver_.vertices.size(); }
    std::size_t arrow_count() const noexcept { return quiver_.arrows.size(); }
    const Arrow& arrow(std::size_t a) const { return quiver_.arrows.at(a); }
    const std::string& vertex_name(std::size_t v) const { return quiver_.vertices.at(v); }

    std::size_t vertex(std::string_view id) const;     // throws UnknownLabel
    std::size_t arrow_id(std::string_view label) const; // throws UnknownLabel

    const std::vector<std::size_t>& arrows_from(std::size_t v) const { return out_.at(v); }
    const std::vector<std::size_t>& arrows_to(std::size_t v) const { return in_.at(v); }

    // True when some relation occurs as a contiguous factor of the path.
    bool contains_relation(std::span<const std::size_t> path) const;
    std::size_t max_relation_length() const noexcept { return max_relation_; }

    const ValidationReport& validation() const noexcept { return report_; }

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.name_ == b.name_ && a.quiver_ == b.quiver_ && a.relations_ == b.relations_;
    }

private:
    std::string name_;
    Quiver quiver_;
    std::vector<Path> relations_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::size_t max_relation_ = 0;
    ValidationReport report_;
};

Presentation parse_presentation(std::string_view text);
std::string serialize(const Presentation& p);

ValidationReport validate_string_algebra(const Presentation& p);

struct PathCount {
    bool infinite = false;
    std::uint64_t count = 0;
};

PathCount nonzero_path_count(const Presentation& p);

// All nonzero paths as (start vertex, arrows); trivial paths included.
// Throws OutOfRange when the algebra is infinite-dimensional.
struct VertexPath {
    std::size_t start = 0;
    Path arrows;

    friend bool operator==(const VertexPath&, const VertexPath&) = default;
};
std::vector<VertexPath> nonzero_paths(const Presentation& p);

std::size_t path_end(const Presentation& p, const VertexPath& path);

} // namespace stringalg
