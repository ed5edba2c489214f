#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = hcurve::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("hcurve_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

constexpr double kPi = 3.141592653589793;

} // namespace

TEST_SUITE("cli") {

TEST_CASE("verify a single root") {
    const Result r = run({"verify", "--roots-angles", "0", "--theta", "0"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["pass"].get<bool>());
    REQUIRE(j["zeros"].size() == 2);
    CHECK(j["zeros"][0].get<double>() == doctest::Approx(0.0));
    CHECK(j["zeros"][1].get<double>() == doctest::Approx(kPi));
    CHECK(j.contains("omega"));
    CHECK(j.contains("max_distance"));
    CHECK(j.contains("predicted"));
}

TEST_CASE("signed angles") {
    const Result r = run({"verify", "--roots-angles", "-1.5", "2.0", "--theta", "0.3", "--signed-angles"});
    REQUIRE(r.code == 0);
    for (const auto& z : r.json()["zeros"]) {
        CHECK(z.get<double>() > -kPi);
        CHECK(z.get<double>() <= kPi);
    }
}

TEST_CASE("matching of the hyperbola") {
    const Result r = run({"matching", "--roots-angles", "0", "3.14159265358979", "--theta", "1.5707963267948966"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["pairs"] == nlohmann::json::parse("[[0,3],[1,2]]"));
}

TEST_CASE("necklace output") {
    const Result r = run({"necklace", "--roots-angles", "0", "3.141592653589793", "--sweep", "16"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["critical_thetas"] == nlohmann::json::parse("[0]"));
    REQUIRE(j["beads"].size() == 1);
    CHECK(j["beads"][0]["pairs"] == nlohmann::json::parse("[[0,3],[1,2]]"));
    CHECK(j["sweep"]["violations"].empty());
}

TEST_CASE("tangents output") {
    const Result r = run({"tangents", "--roots-angles", "0", "0", "--theta", "0"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    REQUIRE(j.size() == 1);
    CHECK(j[0]["multiplicity"].get<int>() == 2);
    CHECK(j[0]["coincides"].get<bool>());
    CHECK(j[0]["on_gon"].get<bool>());
    CHECK(j[0]["equivalence"].get<std::string>() == "holds");
}

TEST_CASE("trace output in both formats") {
    Result r = run({"trace", "--roots-angles", "0", "--cells", "32"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    REQUIRE(j["components"].size() == 1);
    CHECK(j["components"][0]["ends"] == nlohmann::json::parse("[0,1]"));

    r = run({"trace", "--roots-angles", "0", "--cells", "32", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("component,index,re,im\n", 0) == 0);
}

TEST_CASE("roots from a JSON file") {
    const std::string path = temp_path("roots.json");
    std::ofstream(path) << R"({"roots": [[1, 0], [-1, 0]], "multiplicities": [1, 2]})";
    const Result r = run({"verify", "--roots", path, "--theta", "0.2"});
    CHECK(r.code == 0);
    CHECK(r.json()["n"].get<int>() == 3);
    std::filesystem::remove(path);
}

TEST_CASE("seeded random instances are reproducible") {
    const Result a = run({"verify", "--random", "6", "--seed", "9", "--theta", "1"});
    const Result b = run({"verify", "--random", "6", "--seed", "9", "--theta", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Result batch = run({"verify", "--random", "5", "--seed", "1", "--batch", "10"});
    CHECK(batch.code == 0);
    CHECK(batch.json()["instances"].size() == 10);
}

TEST_CASE("render writes an SVG") {
    const std::string svg = temp_path("render.svg");
    const std::string side = temp_path("render.json");
    const Result r = run({"render", "--roots-angles", "0", "2", "4", "--theta", "0.5", "--out", svg,
                          "--sidecar", side, "--asymptotes"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["curves"].get<int>() >= 3);
    const std::string text = slurp(svg);
    CHECK(text.find("class=\"asymptote\"") != std::string::npos);
    CHECK(nlohmann::json::parse(slurp(side))["roots"].size() == 3);
    std::filesystem::remove(svg);
    std::filesystem::remove(side);
}

TEST_CASE("demo is byte-reproducible") {
    const std::string a = temp_path("demo_a.svg");
    const std::string b = temp_path("demo_b.svg");
    const Result ra = run({"demo", "--seed", "42", "--out", a});
    const Result rb = run({"demo", "--seed", "42", "--out", b});
    REQUIRE(ra.code == 0);
    // Identical apart from the output path.
    CHECK(ra.out.substr(ra.out.find("\"chords\"")) == rb.out.substr(rb.out.find("\"chords\"")));
    CHECK(slurp(a) == slurp(b));
    const auto j = ra.json();
    CHECK(j["n"].get<int>() == 7);
    CHECK(j["curves"].get<int>() == 7);
    CHECK(j["verification"]["pass"].get<bool>());
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--roots-angles", "0", "--bogus"}).code == 2);
    CHECK(run({"verify", "--roots-angles", "90deg"}).code == 2);
    CHECK(run({"verify", "--roots-angles", "0", "--theta", "1e400"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--roots-angles", "0", "--random", "3", "--seed", "1"}).code == 2);
    CHECK(run({"verify", "--random", "3"}).code == 2);
    CHECK(run({"render", "--roots-angles", "0"}).code == 2);
    CHECK(run({"verify", "--roots", temp_path("does_not_exist.json")}).code == 2);
    const Result r = run({"verify", "--nope"});
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("off-circle roots are a usage error for verify") {
    const std::string path = temp_path("off.json");
    std::ofstream(path) << R"({"roots": [[0.5, 0]]})";
    CHECK(run({"verify", "--roots", path}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("numerical errors exit with 3") {
    // θ = 0 is a critical value of z² - 1: the curve is singular there.
    const Result r = run({"matching", "--roots-angles", "0", "3.141592653589793", "--theta", "0"});
    CHECK(r.code == 3);
    CHECK(r.err.find("non-generic") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    const Result r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("demo") != std::string::npos);
}

}
