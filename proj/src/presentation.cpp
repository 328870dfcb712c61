#include "stringalg/presentation.hpp"

#include "stringalg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stringalg {

std::optional<std::size_t> Quiver::vertex_index(std::string_view id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return i;
    return std::nullopt;
}

std::optional<std::size_t> Quiver::arrow_index(std::string_view label) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return i;
    return std::nullopt;
}

namespace {

bool is_factor(const Path& small, const Path& big) {
    if (small.size() > big.size()) return false;
    return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

std::string join_labels(const Presentation& p, const std::vector<std::size_t>& arrows) {
    std::string out;
    for (auto a : arrows) {
        if (!out.empty()) out += ", ";
        out += p.arrow(a).label;
    }
    return out;
}

} // namespace

Presentation::Presentation(std::string name, Quiver quiver, std::vector<Path> relations)
    : name_(std::move(name)), quiver_(std::move(quiver)) {
    std::set<std::string> seen;
    for (const auto& v : quiver_.vertices)
        if (!seen.insert(v).second) throw Error(ErrorCode::InvalidRelation, "duplicate vertex '" + v + "'");
    seen.clear();
    for (const auto& a : quiver_.arrows) {
        if (!seen.insert(a.label).second) throw Error(ErrorCode::InvalidRelation, "duplicate arrow '" + a.label + "'");
        if (a.source >= quiver_.vertices.size() || a.target >= quiver_.vertices.size())
            throw Error(ErrorCode::UnknownLabel, "arrow '" + a.label + "' has an undeclared endpoint");
    }
    out_.assign(quiver_.vertices.size(), {});
    in_.assign(quiver_.vertices.size(), {});
    for (std::size_t a = 0; a < quiver_.arrows.size(); ++a) {
        out_[quiver_.arrows[a].source].push_back(a);
        in_[quiver_.arrows[a].target].push_back(a);
    }
    for (const auto& r : relations) {
        if (r.size() < 2) throw Error(ErrorCode::InvalidRelation, "relations must have length at least 2");
        for (auto a : r)
            if (a >= quiver_.arrows.size()) throw Error(ErrorCode::UnknownLabel, "relation uses an unknown arrow");
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            if (quiver_.arrows[r[i]].target != quiver_.arrows[r[i + 1]].source)
                throw Error(ErrorCode::NonComposable, "relation arrows '" + quiver_.arrows[r[i]].label + "' and '" +
                                                          quiver_.arrows[r[i + 1]].label + "' do not compose");
    }
    // Keep the first occurrence of each relation that has no other relation as a factor.
    for (std::size_t i = 0; i < relations.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < relations.size() && !redundant; ++j) {
            if (i == j) continue;
            if (relations[j] == relations[i]) redundant = j < i;
            else redundant = is_factor(relations[j], relations[i]);
        }
        if (!redundant) relations_.push_back(relations[i]);
    }
    for (const auto& r : relations_) max_relation_ = std::max(max_relation_, r.size());
    report_ = validate_string_algebra(*this);
}

std::size_t Presentation::vertex(std::string_view id) const {
    auto v = quiver_.vertex_index(id);
    if (!v) throw Error(ErrorCode::UnknownLabel, "unknown vertex '" + std::string(id) + "'");
    return *v;
}

std::size_t Presentation::arrow_id(std::string_view label) const {
    auto a = quiver_.arrow_index(label);
    if (!a) throw Error(ErrorCode::UnknownLabel, "unknown arrow '" + std::string(label) + "'");
    return *a;
}

bool Presentation::contains_relation(std::span<const std::size_t> path) const {
    for (const auto& r : relations_) {
        if (r.size() > path.size()) continue;
        if (std::search(path.begin(), path.end(), r.begin(), r.end()) != path.end()) return true;
    }
    return false;
}

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& what, ErrorCode code = ErrorCode::Syntax) {
    throw Error(code, "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + what);
}

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
        out.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
    }
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty() || s == "->") return false;
    return s.find_first_of("^+*,;()") == std::string::npos;
}

} // namespace

Presentation parse_presentation(std::string_view text) {
    std::string name = "A";
    Quiver quiver;
    struct PendingArrow {
        Token label, src, dst;
    };
    std::vector<PendingArrow> arrows;
    std::vector<std::vector<Token>> relations;
    bool named = false;

    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        auto tokens = tokenize_line(line, line_no);
        if (tokens.empty()) continue;
        std::string keyword = tokens[0].text;
        if (!keyword.empty() && keyword.back() == ':') keyword.pop_back();
        if (keyword == "algebra") {
            if (tokens.size() != 2) syntax_error(tokens[0], "expected 'algebra <name>'");
            if (named) syntax_error(tokens[0], "algebra name given twice");
            name = tokens[1].text;
            named = true;
        } else if (keyword == "vertices") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (!valid_identifier(tokens[i].text)) syntax_error(tokens[i], "invalid vertex identifier");
                if (quiver.vertex_index(tokens[i].text)) syntax_error(tokens[i], "duplicate vertex", ErrorCode::InvalidRelation);
                quiver.vertices.push_back(tokens[i].text);
            }
        } else if (keyword == "arrow") {
            if (tokens.size() != 5 || tokens[3].text != "->")
                syntax_error(tokens[0], "expected 'arrow <label> <src> -> <dst>'");
            if (!valid_identifier(tokens[1].text)) syntax_error(tokens[1], "invalid arrow label");
            arrows.push_back({tokens[1], tokens[2], tokens[4]});
        } else if (keyword == "relation") {
            if (tokens.size() < 2) syntax_error(tokens[0], "empty relation");
            std::vector<Token> rel(tokens.begin() + 1, tokens.end());
            for (const auto& t : rel)
                if (t.text.find_first_of("+*") != std::string::npos || t.text == "-" ||
                    std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '/'; }))
                    syntax_error(t, "non-monomial relation");
            relations.push_back(std::move(rel));
        } else {
            syntax_error(tokens[0], "unknown keyword '" + tokens[0].text + "'");
        }
        if (nl == text.size()) break;
    }

    for (const auto& a : arrows) {
        if (quiver.arrow_index(a.label.text)) syntax_error(a.label, "duplicate arrow label", ErrorCode::InvalidRelation);
        auto s = quiver.vertex_index(a.src.text);
        if (!s) syntax_error(a.src, "unknown vertex '" + a.src.text + "'", ErrorCode::UnknownLabel);
        auto t = quiver.vertex_index(a.dst.text);
        if (!t) syntax_error(a.dst, "unknown vertex '" + a.dst.text + "'", ErrorCode::UnknownLabel);
        quiver.arrows.push_back({a.label.text, *s, *t});
    }
    std::vector<Path> rels;
    for (const auto& rel : relations) {
        Path path;
        for (const auto& t : rel) {
            auto a = quiver.arrow_index(t.text);
            if (!a) syntax_error(t, "unknown arrow '" + t.text + "'", ErrorCode::UnknownLabel);
            if (!path.empty() && quiver.arrows[path.back()].target != quiver.arrows[*a].source)
                syntax_error(t, "arrow '" + t.text + "' does not compose with its predecessor", ErrorCode::NonComposable);
            path.push_back(*a);
        }
        if (path.size() < 2) syntax_error(rel[0], "relations must have length at least 2", ErrorCode::InvalidRelation);
        rels.push_back(std::move(path));
    }
    return Presentation(name, std::move(quiver), std::move(rels));
}

std::string serialize(const Presentation& p) {
    std::ostringstream out;
    out << "algebra " << p.name() << '\n';
    out << "vertices";
    for (const auto& v : p.quiver().vertices) out << ' ' << v;
    out << '\n';
    for (const auto& a : p.quiver().arrows)
        out << "arrow " << a.label << ' ' << p.vertex_name(a.source) << " -> " << p.vertex_name(a.target) << '\n';
    for (const auto& r : p.relations()) {
        out << "relation";
        for (auto a : r) out << ' ' << p.arrow(a).label;
        out << '\n';
    }
    return out.str();
}

ValidationReport validate_string_algebra(const Presentation& p) {
    ValidationReport report;
    const auto& q = p.quiver();
    std::vector<std::vector<std::size_t>> out(q.vertices.size()), in(q.vertices.size());
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        out[q.arrows[a].source].push_back(a);
        in[q.arrows[a].target].push_back(a);
    }
    auto degree_check = [&](const std::string& id, const std::vector<std::vector<std::size_t>>& adj) {
        ConditionResult c{id, true, {}};
        for (std::size_t v = 0; v < adj.size(); ++v)
            if (adj[v].size() > 2) {
                c.passed = false;
                c.offenders.push_back("vertex " + q.vertices[v] + " (arrows " + join_labels(p, adj[v]) + ")");
            }
        return c;
    };
    report.conditions.push_back(degree_check("1", out));
    report.conditions.push_back(degree_check("1'", in));

    ConditionResult before{"2", true, {}}, after{"2'", true, {}};
    for (std::size_t b = 0; b < q.arrows.size(); ++b) {
        std::vector<std::size_t> preds, succs;
        for (auto g : in[q.arrows[b].source]) {
            Path path{g, b};
            if (!p.contains_relation(path)) preds.push_back(g);
        }
        for (auto g : out[q.arrows[b].target]) {
            Path path{b, g};
            if (!p.contains_relation(path)) succs.push_back(g);
        }
        if (preds.size() > 1) {
            before.passed = false;
            before.offenders.push_back("arrow " + q.arrows[b].label + " (predecessors " + join_labels(p, preds) + ")");
        }
        if (succs.size() > 1) {
            after.passed = false;
            after.offenders.push_back("arrow " + q.arrows[b].label + " (successors " + join_labels(p, succs) + ")");
        }
    }
    report.conditions.push_back(before);
    report.conditions.push_back(after);
    // Monomial ideal: guaranteed by the grammar.
    report.conditions.push_back({"3", true, {}});
    report.is_string_algebra =
        std::all_of(report.conditions.begin(), report.conditions.end(), [](const ConditionResult& c) { return c.passed; });
    return report;
}

PathCount nonzero_path_count(const Presentation& p) {
    const std::size_t window = std::max<std::size_t>(2, p.max_relation_length()) - 1;
    // Windows: nonzero paths with exactly `window` arrows. A cycle among them
    // yields arbitrarily long nonzero paths.
    std::vector<Path> windows;
    std::function<void(Path&)> grow = [&](Path& path) {
        if (path.size() == window) {
            windows.push_back(path);
            return;
        }
        std::size_t at = p.arrow(path.back()).target;
        for (auto a : p.arrows_from(at)) {
            path.push_back(a);
            if (!p.contains_relation(path)) grow(path);
            path.pop_back();
        }
    };
    for (std::size_t a = 0; a < p.arrow_count(); ++a) {
        Path path{a};
        grow(path);
    }
    std::map<Path, std::size_t> index;
    for (std::size_t i = 0; i < windows.size(); ++i) index[windows[i]] = i;
    std::vector<std::vector<std::size_t>> next(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        for (auto a : p.arrows_from(p.arrow(windows[i].back()).target)) {
            Path longer = windows[i];
            longer.push_back(a);
            if (p.contains_relation(longer)) continue;
            Path tail(longer.begin() + 1, longer.end());
            next[i].push_back(index.at(tail));
        }
    }
    std::vector<int> colour(windows.size(), 0);
    std::function<bool(std::size_t)> has_cycle = [&](std::size_t u) {
        colour[u] = 1;
        for (auto w : next[u]) {
            if (colour[w] == 1) return true;
            if (colour[w] == 0 && has_cycle(w)) return true;
        }
        colour[u] = 2;
        return false;
    };
    for (std::size_t i = 0; i < windows.size(); ++i)
        if (colour[i] == 0 && has_cycle(i)) return {true, 0};
    return {false, static_cast<std::uint64_t>(nonzero_paths(p).size())};
}

std::size_t path_end(const Presentation& p, const VertexPath& path) {
    return path.arrows.empty() ? path.start : p.arrow(path.arrows.back()).target;
}

std::vector<VertexPath> nonzero_paths(const Presentation& p) {
    std::vector<VertexPath> all;
    const std::size_t cap = 1U << 20U;
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
        std::vector<VertexPath> layer{{v, {}}};
        while (!layer.empty()) {
            std::vector<VertexPath> next;
            for (const auto& path : layer) {
                all.push_back(path);
                if (all.size() > cap) throw Error(ErrorCode::OutOfRange, "path algebra is infinite-dimensional");
                for (auto a : p.arrows_from(path_end(p, path))) {
                    VertexPath longer = path;
                    longer.arrows.push_back(a);
                    if (!p.contains_relation(longer.arrows)) next.push_back(std::move(longer));
                }
            }
            layer = std::move(next);
        }
    }
    return all;
}

} // namespace stringalg
