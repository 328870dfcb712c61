#include "stringalg/families.hpp"

#include "stringalg/errors.hpp"

namespace stringalg {

Family parse_family(const std::string& name) {
    if (name == "W" || name == "w") return Family::W;
    if (name == "U" || name == "u") return Family::U;
    if (name == "V" || name == "v") return Family::V;
    throw Error(ErrorCode::OutOfRange, "unknown family '" + name + "' (expected W, U or V)");
}

namespace {

struct Builder {
    Quiver q;
    std::vector<Path> relations;

    std::size_t vertex(const std::string& id) {
        q.vertices.push_back(id);
        return q.vertices.size() - 1;
    }
    std::size_t arrow(const std::string& label, std::size_t s, std::size_t t) {
        q.arrows.push_back({label, s, t});
        return q.arrows.size() - 1;
    }
};

[[noreturn]] void bad_params(const std::string& what) { throw Error(ErrorCode::OutOfRange, what); }

// Two-armed quiver 1 -> a2 -> .. -> am -> x and 1 -> b2 -> .. -> x with
// `betas` arrows on the lower arm and the relation g_{m-1} g_m.
Builder two_arms(std::size_t m, std::size_t betas) {
    Builder b;
    std::size_t one = b.vertex("1");
    std::vector<std::size_t> upper{one};
    for (std::size_t i = 2; i <= m; ++i) upper.push_back(b.vertex("a" + std::to_string(i)));
    std::size_t x = b.vertex("x");
    upper.push_back(x);
    std::vector<std::size_t> lower{one};
    for (std::size_t i = 2; i <= betas; ++i) lower.push_back(b.vertex("b" + std::to_string(i)));
    lower.push_back(x);
    std::vector<std::size_t> gammas;
    for (std::size_t i = 1; i <= m; ++i) gammas.push_back(b.arrow("g" + std::to_string(i), upper[i - 1], upper[i]));
    for (std::size_t i = 1; i <= betas; ++i) b.arrow("b" + std::to_string(i), lower[i - 1], lower[i]);
    b.relations.push_back({gammas[m - 2], gammas[m - 1]});
    return b;
}

} // namespace

FamilySpec make_family(Family family, const std::vector<std::size_t>& params) {
    FamilySpec spec{family, params, Presentation("empty", {}, {})};
    std::string name;
    Builder b;
    switch (family) {
    case Family::W: {
        if (params.size() != 1 || params[0] < 2) bad_params("W(n) needs n >= 2");
        std::size_t n = params[0];
        for (std::size_t v = 1; v <= n + 1; ++v) b.vertex(std::to_string(v));
        std::size_t alpha = b.arrow("a", 0, 0);
        std::vector<std::size_t> betas;
        for (std::size_t i = 1; i <= n; ++i) betas.push_back(b.arrow("b" + std::to_string(i), i - 1, i));
        b.relations.push_back({alpha, alpha});
        b.relations.push_back({betas[0], betas[1]});
        name = "W(" + std::to_string(n) + ")";
        break;
    }
    case Family::U: {
        if (params.size() != 2 || params[0] < 2 || params[1] < 2) bad_params("U needs m, n >= 2");
        b = two_arms(params[0], params[1] - 1);
        name = "U(" + std::to_string(params[0]) + "," + std::to_string(params[1] - 1) + ")";
        break;
    }
    case Family::V: {
        if (params.size() != 2 || params[0] < 2 || params[1] < 3) bad_params("V needs m >= 2 and n >= 3");
        b = two_arms(params[0], params[1] - 2);
        std::size_t w = b.vertex("w");
        std::size_t am = *b.q.vertex_index("a" + std::to_string(params[0]));
        b.arrow("a", am, w);
        name = "V(" + std::to_string(params[0]) + "," + std::to_string(params[1] - 2) + ")";
        break;
    }
    }
    spec.presentation = Presentation(name, std::move(b.q), std::move(b.relations));
    return spec;
}

} // namespace stringalg
