#include "doctest.h"

#include "fixtures.hpp"
#include "stringalg/errors.hpp"

#include <string>

using namespace stringalg;

namespace {

ErrorCode code_of(const char* src) {
    try {
        parse_presentation(src);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse error");
    return ErrorCode::Inconsistency;
}

std::string message_of(const char* src) {
    try {
        parse_presentation(src);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("parse the W(3) source") {
    Presentation p = fixtures::parse(fixtures::kW3);
    CHECK(p.name() == "W(3)");
    CHECK(p.vertex_count() == 4);
    CHECK(p.arrow_count() == 4);
    CHECK(p.relations().size() == 2);
    CHECK(p.arrow(p.arrow_id("b2")).source == p.vertex("2"));
    CHECK(p.relations()[1] == Path{p.arrow_id("b1"), p.arrow_id("b2")});
}

TEST_CASE("vertices only") {
    Presentation p = parse_presentation("vertices 1\n");
    CHECK(p.vertex_count() == 1);
    CHECK(p.arrow_count() == 0);
    CHECK(p.name() == "A");
}

TEST_CASE("parse errors") {
    std::string w3 = fixtures::kW3;
    CHECK(code_of((w3 + "relation b2 b1\n").c_str()) == ErrorCode::NonComposable);
    CHECK(code_of("vertices 1 2\narrow x 1 -> 3\n") == ErrorCode::UnknownLabel);
    CHECK(code_of("vertices 1 2\narrow x 1 -> 2\nrelation x\n") == ErrorCode::InvalidRelation);
    CHECK(code_of("vertices 1 2\narrow x 1 -> 2\nrelation x y\n") == ErrorCode::UnknownLabel);
    CHECK(code_of("vertices 1\narrow x 1 -> 1\nrelation x + x\n") == ErrorCode::Syntax);
    CHECK(code_of("vertices 1 1\n") == ErrorCode::InvalidRelation);
    CHECK(code_of("vertices 1\nquiver 1\n") == ErrorCode::Syntax);

    std::string msg = message_of("vertices 1 2\narrow x 1 2\n");
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("relations are normalized") {
    Presentation p = parse_presentation("vertices 1 2 3\narrow x 1 -> 2\narrow y 2 -> 3\narrow z 2 -> 2\n"
                                        "relation x z y\nrelation z y\nrelation z y\n");
    REQUIRE(p.relations().size() == 1);
    CHECK(p.relations()[0] == Path{p.arrow_id("z"), p.arrow_id("y")});
}

TEST_CASE("serialize round trip") {
    for (const char* src : {fixtures::kW3, fixtures::kBanded, fixtures::kLoopIn, fixtures::kA3}) {
        Presentation p = fixtures::parse(src);
        std::string text = serialize(p);
        Presentation q = parse_presentation(text);
        CHECK(q == p);
        CHECK(serialize(q) == text);
    }
}

TEST_CASE("string algebra conditions") {
    Presentation w3 = fixtures::parse(fixtures::kW3);
    ValidationReport r = validate_string_algebra(w3);
    CHECK(r.is_string_algebra);
    REQUIRE(r.conditions.size() == 5);
    for (const auto& c : r.conditions) CHECK(c.passed);
    CHECK(validate_string_algebra(w3) == r);
    CHECK(w3.validation() == r);

    Presentation three_out = parse_presentation("vertices 0 1 2 3\narrow x 0 -> 1\narrow y 0 -> 2\narrow z 0 -> 3\n");
    ValidationReport bad = validate_string_algebra(three_out);
    CHECK_FALSE(bad.is_string_algebra);
    CHECK(bad.conditions[0].id == "1");
    CHECK_FALSE(bad.conditions[0].passed);
    REQUIRE(bad.conditions[0].offenders.size() == 1);
    CHECK(bad.conditions[0].offenders[0].rfind("vertex 0", 0) == 0);

    Presentation two_in = parse_presentation("vertices 1 2 3 4\narrow ga 1 -> 2\narrow de 3 -> 2\narrow be 2 -> 4\n");
    ValidationReport bad2 = validate_string_algebra(two_in);
    CHECK_FALSE(bad2.is_string_algebra);
    CHECK(bad2.conditions[2].id == "2");
    CHECK_FALSE(bad2.conditions[2].passed);
    REQUIRE_FALSE(bad2.conditions[2].offenders.empty());
    CHECK(bad2.conditions[2].offenders[0].find("be") != std::string::npos);
}

TEST_CASE("nonzero path counts") {
    Presentation w3 = fixtures::parse(fixtures::kW3);
    PathCount c = nonzero_path_count(w3);
    CHECK_FALSE(c.infinite);
    CHECK(c.count == fixtures::brute_path_count(w3, 12));
    CHECK(nonzero_paths(w3).size() == c.count);

    CHECK(nonzero_path_count(parse_presentation("vertices 1\narrow l 1 -> 1\n")).infinite);
    CHECK(nonzero_path_count(parse_presentation("vertices 1\n")).count == 1);

    for (const char* src : {fixtures::kLoopIn, fixtures::kLoopKilled, fixtures::kA3}) {
        Presentation p = fixtures::parse(src);
        PathCount pc = nonzero_path_count(p);
        REQUIRE_FALSE(pc.infinite);
        CHECK(pc.count <= 30);
        CHECK(pc.count == fixtures::brute_path_count(p, 12));
        CHECK(nonzero_paths(p).size() == pc.count);
    }
    CHECK(nonzero_path_count(fixtures::parse(fixtures::kBanded)).count == fixtures::brute_path_count(fixtures::parse(fixtures::kBanded), 12));
}
