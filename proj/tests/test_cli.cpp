#include "doctest.h"

#include "fixtures.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args, const std::string& env = {}) {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" STRINGALG_CLI "\" " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / ("stringalg_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("knit census in DOT") {
    Result r = run("knit --family W --n 3 --dot");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(count(r.out, "[label=") == 12);
    CHECK(count(r.out, "->") == 24);
    CHECK(count(r.out, "dotted") == 8);
}

TEST_CASE("knit JSON from a file") {
    fs::path dir = scratch_dir();
    fs::path file = dir / "w3.alg";
    std::ofstream(file) << fixtures::kW3;
    Result r = run("knit " + file.string() + " --json");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["nodes"].size() == 12);
    CHECK(j["arrows"].size() == 16);
    CHECK(j["tauPairs"].size() == 8);
    fs::remove_all(dir);
}

TEST_CASE("witness JSON") {
    Result r = run("witness --family W --n 3 --json");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["compositeDepth"] == 6);
    CHECK(j["expectedDepth"] == 6);
    CHECK(j["verified"] == true);
    CHECK(j["path"].front() == "b2");
    CHECK(j["path"].back() == "a b1");
}

TEST_CASE("audit output is reproducible") {
    Result a = run("audit --family U --m 2 --n 2 --samples 3 --seed 5 --json");
    Result b = run("audit --family U --m 2 --n 2 --samples 3 --seed 5 --json");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
}

TEST_CASE("exit codes") {
    CHECK(run("tau --family W --n 3 --word b3").status == 1);
    CHECK(run("strings --family W --n 1").status == 1);
    CHECK(run("knit --bogus").status == 3);
    CHECK(run("nosuchcommand").status == 3);
    CHECK(run("degree --family W --n 3 --source b2 --target b2 --side sideways").status == 3);
}

TEST_CASE("output directory prefix") {
    fs::path dir = scratch_dir();
    Result r = run("strings --family W --n 3 --json -o census.json", "STRINGALG_OUTPUT_DIR=" + dir.string());
    CHECK(r.status == 0);
    fs::path written = dir / "census.json";
    REQUIRE(fs::exists(written));
    std::ifstream in(written);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j.dump().find("b1^- a b1") != std::string::npos);
    fs::remove_all(dir);
}
