#pragma once

#include "stringalg/presentation.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stringalg {

struct Letter {
    std::size_t arrow = 0;
    bool inverse = false;

    // Arrow declaration order, direct before inverse.
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter inverted(Letter l) { return {l.arrow, !l.inverse}; }

std::size_t letter_source(const Presentation& p, Letter l);
std::size_t letter_target(const Presentation& p, Letter l);

// Walk c_1 ... c_n together with the vertices z_0 ... z_n it visits.
class Walk {
public:
    Walk() = default;
    static Walk trivial(std::size_t vertex);
    // Throws InvalidWalk when consecutive letters do not concatenate.
    static Walk make(const Presentation& p, std::size_t start, std::vector<Letter> letters);
    static Walk make(const Presentation& p, std::vector<Letter> letters); // letters nonempty

    std::size_t length() const noexcept { return letters_.size(); }
    bool is_trivial() const noexcept { return letters_.empty(); }
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    const Letter& letter(std::size_t i) const { return letters_.at(i); }
    const std::vector<std::size_t>& vertices() const noexcept { return vertices_; }
    std::size_t start() const { return vertices_.front(); }
    std::size_t end() const { return vertices_.back(); }

    Walk inverse() const;
    Walk appended(const Presentation& p, Letter l) const;
    Walk prepended(const Presentation& p, Letter l) const;
    Walk slice(std::size_t first_position, std::size_t last_position) const; // positions inclusive

    friend bool operator==(const Walk& a, const Walk& b) {
        return a.letters_ == b.letters_ && a.vertices_ == b.vertices_;
    }

private:
    std::vector<Letter> letters_;
    std::vector<std::size_t> vertices_;
};

// Canonical module order: length, then letters lexicographically, then basepoint.
bool walk_less(const Walk& a, const Walk& b);

struct StringCheck {
    bool ok = true;
    std::string reason;
    std::size_t index = 0; // first offending letter index
};

StringCheck check_string(const Presentation& p, const Walk& w);
bool is_string(const Presentation& p, const Walk& w);

Walk canonicalize(const Walk& w);
bool is_canonical(const Walk& w);

struct StringFlags {
    bool starts_in_deep = false;
    bool starts_on_peak = false;
    bool ends_in_deep = false;
    bool ends_on_peak = false;
    bool is_direct = false;
    bool is_inverse = false;

    friend bool operator==(const StringFlags&, const StringFlags&) = default;
};

StringFlags string_flags(const Presentation& p, const Walk& w);

// Letters of the given orientation that extend w to a string on that side.
std::vector<Letter> append_candidates(const Presentation& p, const Walk& w, bool inverse);
std::vector<Letter> prepend_candidates(const Presentation& p, const Walk& w, bool inverse);

// Canonical strings sorted in canonical module order. Without a bound the
// algebra must be band-free (BandFound otherwise).
std::vector<Walk> enumerate_strings(const Presentation& p, std::optional<std::size_t> max_len = std::nullopt);

// Bands of length at most max_len, canonical under rotation and inversion.
std::vector<Walk> find_bands(const Presentation& p, std::size_t max_len);

// Bound above which any string forces a band (see enumerate_strings).
std::size_t band_free_length_bound(const Presentation& p);

std::string format_letter(const Presentation& p, Letter l);
std::string format_walk(const Presentation& p, const Walk& w);
Walk parse_walk(const Presentation& p, std::string_view text);

} // namespace stringalg
