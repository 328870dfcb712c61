#include "stringalg/strings.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace stringalg {

std::size_t letter_source(const Presentation& p, Letter l) {
    const Arrow& a = p.arrow(l.arrow);
    return l.inverse ? a.target : a.source;
}

std::size_t letter_target(const Presentation& p, Letter l) {
    const Arrow& a = p.arrow(l.arrow);
    return l.inverse ? a.source : a.target;
}

Walk Walk::trivial(std::size_t vertex) {
    Walk w;
    w.vertices_ = {vertex};
    return w;
}

Walk Walk::make(const Presentation& p, std::size_t start, std::vector<Letter> letters) {
    if (start >= p.vertex_count()) throw Error(ErrorCode::UnknownLabel, "walk basepoint out of range");
    Walk w;
    w.vertices_.reserve(letters.size() + 1);
    w.vertices_.push_back(start);
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i].arrow >= p.arrow_count()) throw Error(ErrorCode::UnknownLabel, "walk uses an unknown arrow");
        if (letter_source(p, letters[i]) != w.vertices_.back())
            throw Error(ErrorCode::InvalidWalk, "letters " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                    " do not concatenate");
        w.vertices_.push_back(letter_target(p, letters[i]));
    }
    w.letters_ = std::move(letters);
    return w;
}

Walk Walk::make(const Presentation& p, std::vector<Letter> letters) {
    if (letters.empty()) throw Error(ErrorCode::InvalidWalk, "nontrivial walk expected");
    if (letters.front().arrow >= p.arrow_count()) throw Error(ErrorCode::UnknownLabel, "walk uses an unknown arrow");
    std::size_t start = letter_source(p, letters.front());
    return make(p, start, std::move(letters));
}

Walk Walk::inverse() const {
    Walk w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(inverted(*it));
    w.vertices_.assign(vertices_.rbegin(), vertices_.rend());
    return w;
}

Walk Walk::appended(const Presentation& p, Letter l) const {
    if (letter_source(p, l) != end()) throw Error(ErrorCode::InvalidWalk, "appended letter does not concatenate");
    Walk w = *this;
    w.letters_.push_back(l);
    w.vertices_.push_back(letter_target(p, l));
    return w;
}

Walk Walk::prepended(const Presentation& p, Letter l) const {
    if (letter_target(p, l) != start()) throw Error(ErrorCode::InvalidWalk, "prepended letter does not concatenate");
    Walk w = *this;
    w.letters_.insert(w.letters_.begin(), l);
    w.vertices_.insert(w.vertices_.begin(), letter_source(p, l));
    return w;
}

Walk Walk::slice(std::size_t first, std::size_t last) const {
    if (first > last || last >= vertices_.size()) throw Error(ErrorCode::OutOfRange, "walk slice out of range");
    Walk w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(first),
                      letters_.begin() + static_cast<std::ptrdiff_t>(last));
    w.vertices_.assign(vertices_.begin() + static_cast<std::ptrdiff_t>(first),
                       vertices_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    return w;
}

bool walk_less(const Walk& a, const Walk& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.letters() != b.letters()) return a.letters() < b.letters();
    return a.start() < b.start();
}

namespace {

// Arrow path traced by letters [first, last] of one orientation, in diagram order.
Path run_path(const Walk& w, std::size_t first, std::size_t last) {
    Path path;
    for (std::size_t i = first; i <= last; ++i) path.push_back(w.letter(i).arrow);
    if (w.letter(first).inverse) std::reverse(path.begin(), path.end());
    return path;
}

// Whether the last letter of w completes a relation inside its final run.
bool tail_hits_relation(const Presentation& p, const Walk& w) {
    std::size_t n = w.length();
    bool inv = w.letter(n - 1).inverse;
    std::size_t first = n - 1;
    std::size_t limit = p.max_relation_length();
    while (first > 0 && w.letter(first - 1).inverse == inv && n - first < limit) --first;
    return p.contains_relation(run_path(w, first, n - 1));
}

bool tail_ok(const Presentation& p, const Walk& w) {
    std::size_t n = w.length();
    if (n >= 2 && w.letter(n - 1) == inverted(w.letter(n - 2))) return false;
    return !tail_hits_relation(p, w);
}

} // namespace

StringCheck check_string(const Presentation& p, const Walk& w) {
    for (std::size_t i = 0; i < w.length(); ++i)
        if (w.letter(i).arrow >= p.arrow_count()) throw Error(ErrorCode::UnknownLabel, "walk uses an unknown arrow");
    if (w.vertices().size() != w.length() + 1) return {false, "malformed walk", 0};
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (letter_source(p, w.letter(i)) != w.vertices()[i] || letter_target(p, w.letter(i)) != w.vertices()[i + 1])
            return {false, "letters do not concatenate", i};
        if (i > 0 && w.letter(i) == inverted(w.letter(i - 1))) return {false, "not reduced", i};
        Walk prefix = w.slice(0, i + 1);
        if (tail_hits_relation(p, prefix))
            return {false, std::string(w.letter(i).inverse ? "inverse of a relation" : "relation") + " is a subwalk", i};
    }
    return {};
}

bool is_string(const Presentation& p, const Walk& w) { return check_string(p, w).ok; }

Walk canonicalize(const Walk& w) {
    Walk inv = w.inverse();
    return inv.letters() < w.letters() ? inv : w;
}

bool is_canonical(const Walk& w) { return canonicalize(w) == w; }

std::vector<Letter> append_candidates(const Presentation& p, const Walk& w, bool inverse) {
    std::vector<Letter> out;
    const auto& arrows = inverse ? p.arrows_to(w.end()) : p.arrows_from(w.end());
    for (auto a : arrows) {
        Letter l{a, inverse};
        if (tail_ok(p, w.appended(p, l))) out.push_back(l);
    }
    return out;
}

std::vector<Letter> prepend_candidates(const Presentation& p, const Walk& w, bool inverse) {
    // Prepending l to w is appending l^-1 to w^-1.
    std::vector<Letter> out;
    for (auto l : append_candidates(p, w.inverse(), !inverse)) out.push_back(inverted(l));
    std::sort(out.begin(), out.end());
    return out;
}

StringFlags string_flags(const Presentation& p, const Walk& w) {
    StringFlags f;
    f.starts_in_deep = prepend_candidates(p, w, true).empty();
    f.starts_on_peak = prepend_candidates(p, w, false).empty();
    f.ends_in_deep = append_candidates(p, w, false).empty();
    f.ends_on_peak = append_candidates(p, w, true).empty();
    f.is_direct = std::none_of(w.letters().begin(), w.letters().end(), [](Letter l) { return l.inverse; });
    f.is_inverse = std::all_of(w.letters().begin(), w.letters().end(), [](Letter l) { return l.inverse; });
    return f;
}

std::size_t band_free_length_bound(const Presentation& p) {
    // States of the string automaton are the last r-1 letters.
    std::size_t r = std::max<std::size_t>(2, p.max_relation_length());
    std::size_t letters = 2 * p.arrow_count();
    std::size_t states = 1;
    for (std::size_t i = 0; i + 1 < r; ++i) {
        if (letters != 0 && states > std::numeric_limits<std::size_t>::max() / 4 / letters)
            return std::numeric_limits<std::size_t>::max() / 4;
        states *= std::max<std::size_t>(letters, 1);
    }
    return states + r;
}

namespace {

struct WalkLess {
    bool operator()(const Walk& a, const Walk& b) const { return walk_less(a, b); }
};

// Depth-first growth of all strings by appending; visit returns false to prune.
void grow_strings(const Presentation& p, std::size_t max_len, const std::function<bool(const Walk&)>& visit) {
    std::function<void(const Walk&)> rec = [&](const Walk& w) {
        if (!visit(w) || w.length() >= max_len) return;
        for (bool inv : {false, true})
            for (auto l : append_candidates(p, w, inv)) rec(w.appended(p, l));
    };
    for (std::size_t v = 0; v < p.vertex_count(); ++v) rec(Walk::trivial(v));
}

[[noreturn]] void band_found(const Presentation& p, const std::vector<Walk>& bands) {
    std::string msg = "algebra has bands";
    if (!bands.empty()) msg += ", e.g. " + format_walk(p, bands.front());
    throw Error(ErrorCode::BandFound, msg);
}

} // namespace

std::vector<Walk> enumerate_strings(const Presentation& p, std::optional<std::size_t> max_len) {
    std::size_t limit = 0;
    if (max_len) {
        limit = *max_len;
    } else {
        std::size_t bound = band_free_length_bound(p);
        std::size_t quick = std::min<std::size_t>(bound, 2 * p.arrow_count() + 2);
        auto bands = find_bands(p, quick);
        if (!bands.empty()) band_found(p, bands);
        limit = bound + 1;
    }
    std::set<Walk, WalkLess> found;
    std::size_t longest = 0;
    grow_strings(p, limit, [&](const Walk& w) {
        found.insert(canonicalize(w));
        longest = std::max(longest, w.length());
        return true;
    });
    if (!max_len && longest > band_free_length_bound(p)) band_found(p, find_bands(p, longest));
    return {found.begin(), found.end()};
}

std::vector<Walk> find_bands(const Presentation& p, std::size_t max_len) {
    std::size_t r = std::max<std::size_t>(2, p.max_relation_length());
    std::set<Walk, WalkLess> found;
    grow_strings(p, max_len, [&](const Walk& w) {
        std::size_t n = w.length();
        if (n == 0 || w.end() != w.start()) return true;
        // proper power check
        for (std::size_t d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            bool periodic = true;
            for (std::size_t i = 0; i < n && periodic; ++i) periodic = w.letter(i) == w.letter((i + d) % n);
            if (periodic) return true;
        }
        std::size_t copies = std::max<std::size_t>(2, 1 + (r + n - 1) / n);
        std::vector<Letter> power;
        for (std::size_t k = 0; k < copies; ++k) power.insert(power.end(), w.letters().begin(), w.letters().end());
        if (!is_string(p, Walk::make(p, w.start(), power))) return true;
        Walk best = w;
        for (const Walk& base : {w, w.inverse()}) {
            for (std::size_t d = 0; d < n; ++d) {
                std::vector<Letter> rot(base.letters().begin() + static_cast<std::ptrdiff_t>(d), base.letters().end());
                rot.insert(rot.end(), base.letters().begin(), base.letters().begin() + static_cast<std::ptrdiff_t>(d));
                Walk cand = Walk::make(p, base.vertices()[d], rot);
                if (walk_less(cand, best)) best = cand;
            }
        }
        found.insert(best);
        return true;
    });
    return {found.begin(), found.end()};
}

std::string format_letter(const Presentation& p, Letter l) {
    return p.arrow(l.arrow).label + (l.inverse ? "^-" : "");
}

std::string format_walk(const Presentation& p, const Walk& w) {
    if (w.is_trivial()) return "e(" + p.vertex_name(w.start()) + ")";
    std::string out;
    for (auto l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += format_letter(p, l);
    }
    return out;
}

Walk parse_walk(const Presentation& p, std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t' || text[i] == ',') {
            ++i;
            continue;
        }
        std::size_t s = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != ',') ++i;
        tokens.emplace_back(text.substr(s, i - s));
    }
    if (tokens.empty()) throw Error(ErrorCode::Syntax, "empty walk");
    if (tokens.size() == 1 && tokens[0].size() > 3 && tokens[0].rfind("e(", 0) == 0 && tokens[0].back() == ')')
        return Walk::trivial(p.vertex(tokens[0].substr(2, tokens[0].size() - 3)));
    std::vector<Letter> letters;
    for (const auto& t : tokens) {
        bool inv = t.size() > 2 && t.compare(t.size() - 2, 2, "^-") == 0;
        std::string label = inv ? t.substr(0, t.size() - 2) : t;
        letters.push_back({p.arrow_id(label), inv});
    }
    return Walk::make(p, std::move(letters));
}

} // namespace stringalg
