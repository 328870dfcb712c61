#pragma once

#include "stringalg/presentation.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

inline const char* kW3 = R"(# loop with two monomial relations
algebra W(3)
vertices 1 2 3 4
arrow a 1 -> 1
arrow b1 1 -> 2
arrow b2 2 -> 3
arrow b3 3 -> 4
relation a a
relation b1 b2
)";

// Two paths 1 -> 3 and a tail; representation-infinite.
inline const char* kBanded = R"(algebra banded
vertices 1 2 3 4
arrow g1 1 -> 2
arrow g2 2 -> 3
arrow al 1 -> 3
arrow be 3 -> 4
relation al be
)";

// Loop at 1 fed by 2.
inline const char* kLoopIn = R"(algebra loopin
vertices 1 2
arrow al 1 -> 1
arrow be 2 -> 1
relation al al
)";

// Loop at a leaving to x, killed on the way out.
inline const char* kLoopKilled = R"(algebra loopkilled
vertices a x
arrow al a -> a
arrow be a -> x
relation al al
relation al be
)";

inline const char* kA3 = R"(algebra A3
vertices 1 2 3
arrow x 1 -> 2
arrow y 2 -> 3
)";

inline const char* kA2 = R"(algebra A2
vertices 1 2
arrow x 1 -> 2
)";

inline stringalg::Presentation parse(const char* src) { return stringalg::parse_presentation(src); }

// Independent oracle: nonzero paths by brute force over arrow sequences.
inline std::size_t brute_path_count(const stringalg::Presentation& p, std::size_t max_len) {
    auto is_zero = [&](const std::vector<std::size_t>& path) {
        for (const auto& r : p.relations())
            for (std::size_t i = 0; i + r.size() <= path.size(); ++i)
                if (std::equal(r.begin(), r.end(), path.begin() + static_cast<std::ptrdiff_t>(i))) return true;
        return false;
    };
    std::size_t count = p.vertex_count();
    std::vector<std::vector<std::size_t>> layer;
    for (std::size_t a = 0; a < p.arrow_count(); ++a) layer.push_back({a});
    for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (auto& path : layer) {
            if (is_zero(path)) continue;
            ++count;
            for (std::size_t a = 0; a < p.arrow_count(); ++a)
                if (p.arrow(a).source == p.arrow(path.back()).target) {
                    auto longer = path;
                    longer.push_back(a);
                    next.push_back(longer);
                }
        }
        layer = std::move(next);
    }
    return count;
}

// Independent oracle: strings up to a length, one per {w, w^-1}, as sorted keys.
using RawLetter = std::pair<std::size_t, bool>; // arrow, inverse
inline std::set<std::vector<long>> brute_strings(const stringalg::Presentation& p, std::size_t max_len) {
    auto src = [&](RawLetter l) { return l.second ? p.arrow(l.first).target : p.arrow(l.first).source; };
    auto dst = [&](RawLetter l) { return l.second ? p.arrow(l.first).source : p.arrow(l.first).target; };
    auto zero = [&](const std::vector<std::size_t>& path) {
        for (const auto& r : p.relations())
            for (std::size_t i = 0; i + r.size() <= path.size(); ++i)
                if (std::equal(r.begin(), r.end(), path.begin() + static_cast<std::ptrdiff_t>(i))) return true;
        return false;
    };
    auto valid = [&](const std::vector<RawLetter>& w) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (dst(w[i]) != src(w[i + 1])) return false;
            if (w[i].first == w[i + 1].first && w[i].second != w[i + 1].second) return false;
        }
        // Maximal runs of one direction, read as paths.
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j].second == w[i].second) ++j;
            std::vector<std::size_t> path;
            for (std::size_t k = i; k < j; ++k) path.push_back(w[k].first);
            if (w[i].second) std::reverse(path.begin(), path.end());
            if (zero(path)) return false;
            i = j;
        }
        return true;
    };
    auto key = [](const std::vector<RawLetter>& w) {
        std::vector<long> k;
        for (auto [a, inv] : w) k.push_back(static_cast<long>(2 * a + (inv ? 1 : 0)));
        return k;
    };
    std::set<std::vector<long>> out;
    for (std::size_t v = 0; v < p.vertex_count(); ++v) out.insert({-1 - static_cast<long>(v)});
    std::vector<std::vector<RawLetter>> layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<RawLetter>> next;
        for (const auto& w : layer)
            for (std::size_t a = 0; a < p.arrow_count(); ++a)
                for (bool inv : {false, true}) {
                    auto longer = w;
                    longer.push_back({a, inv});
                    if (!valid(longer)) continue;
                    next.push_back(longer);
                    std::vector<RawLetter> back(longer.rbegin(), longer.rend());
                    for (auto& l : back) l.second = !l.second;
                    out.insert(std::min(key(longer), key(back)));
                }
        layer = std::move(next);
    }
    return out;
}

} // namespace fixtures
