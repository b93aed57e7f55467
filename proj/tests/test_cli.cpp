#include <sstream>

#include "doctest.h"
#include "fairdiv/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = fairdiv::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(FAIRDIV_SCENARIO_DIR) + "/" + name; }
std::string data(const std::string& name) { return std::string(FAIRDIV_TEST_DATA_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("welfare eval") {
    const auto r = run({"welfare", "eval", "--cuf", "nash", "--vector", "4,4"});
    CHECK(r.code == 0);
    CHECK(r.out == "16\n");
    CHECK(run({"welfare", "eval", "--cuf", "owa:1,1/2", "--vector", "3,1/2"}).out == "2\n");
    CHECK(run({"welfare", "eval", "--cuf", "rank:5", "--vector", "1,2"}).code == 1);
    CHECK(run({"welfare", "eval", "--cuf", "nash", "--vector", "0.5,2"}).code == 1);
}

TEST_CASE("separability witness from the fixture") {
    const auto r = run({"welfare", "axioms", "--swo", "egal", "--axiom", "separability", "--scenario",
                        scenario("welfare_separability.json"), "--samples", "0"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "verdict: violated"));
    CHECK(contains(r.out, "<11,7,8> vs <11,3,5>"));
}

TEST_CASE("cut and choose report") {
    const auto r = run({"cake", "run", "--procedure", "cut-and-choose", "--scenario", scenario("cake_uniform.json"),
                        "--verify"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "player 1: [1/2,1]"));
    CHECK(contains(r.out, "complete yes, proportional yes, envy-free yes, contiguous yes"));
}

TEST_CASE("allocation reports") {
    for (const char* cmd : {"solve", "oracle"}) {
        const auto r = run({"alloc", cmd, "--scenario", scenario("alloc_example.json"), "--format", "json"});
        CHECK(r.code == 0);
        CHECK(contains(r.out, "\"objective\": \"23\""));
    }
}

TEST_CASE("invalid input exits with 1 and names the condition") {
    auto r = run({"cake", "run", "--procedure", "cut-and-choose", "--scenario", data("cake_float.json")});
    CHECK(r.code == 1);
    CHECK(contains(r.err, "floating-point"));
    r = run({"cake", "run", "--procedure", "cut-and-choose", "--scenario", data("cake_unnormalised.json")});
    CHECK(r.code == 1);
    CHECK(contains(r.err, "normalisation"));
    CHECK(run({"cake", "run", "--procedure", "steinhaus", "--scenario", scenario("cake_uniform.json")}).code == 1);
    CHECK(run({"cake", "run", "--procedure", "nope", "--scenario", scenario("cake_uniform.json")}).code == 1);
    CHECK(run({"cake", "run", "--procedure", "cut-and-choose", "--scenario", data("missing.json")}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
}

TEST_CASE("guards exit with 2") {
    CHECK(run({"negotiate", "run", "--scenario", data("negotiation_large.json")}).code == 2);
    CHECK(run({"alloc", "oracle", "--scenario", data("alloc_large.json")}).code == 2);
}

TEST_CASE("reports are deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"welfare", "axioms", "--swo", "nash", "--axiom", "zi", "--samples", "200", "--seed", "5"},
        {"cake", "run", "--procedure", "stromquist", "--scenario", scenario("cake_three.json"), "--verify", "--log"},
        {"alloc", "solve", "--scenario", scenario("alloc_example.json")},
        {"negotiate", "run", "--scenario", scenario("negotiation.json"), "--generator", "one-good", "--seed", "3"},
    };
    for (const auto& c : commands) {
        for (const char* format : {"table", "json"}) {
            auto args = c;
            args.insert(args.end(), {"--format", format});
            const auto a = run(args);
            const auto b = run(args);
            CHECK(a.code == 0);
            CHECK(a.out == b.out);
        }
    }
}
