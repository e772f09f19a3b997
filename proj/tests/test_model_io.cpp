#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/benchmarks.hpp"
#include "hxplain/model_io.hpp"

#include <filesystem>
#include <random>

using namespace hxplain;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "variables": ["x"],
  "locations": {
    "a": {"flow": {"x": [1, 1]}, "invariant": [{"lhs": {"x": 1}, "op": "<=", "rhs": 0.1}]},
    "b": {"flow": {"x": [0, "1/2"]}}
  },
  "edges": [{"id": "go", "source": "a", "target": "b", "guard": [{"lhs": {"x": 1}, "op": ">=", "rhs": "1/20"}],
             "reset": {"x": {"coeffs": {"x": 2}, "const": -1}}}],
  "init": {"location": "a", "constraints": [{"lhs": {"x": 1}, "op": "=", "rhs": 0}]},
  "goal": {"location": "b"},
  "depth": 3
})";

std::string replace_once(std::string s, const std::string& from, const std::string& to)
{
    auto p = s.find(from);
    REQUIRE(p != std::string::npos);
    s.replace(p, from.size(), to);
    return s;
}

} // namespace

TEST_CASE("minimal model parses exactly")
{
    ModelDocument doc = parse_model(kMinimal);
    const auto& a = doc.problem.automaton;
    CHECK(a.locations.size() == 2);
    CHECK(a.location("a").invariant[0].rhs == Rat(1, 10));
    CHECK(a.location("b").flow.at("x").hi == Rat(1, 2));
    const Edge& e = a.edge("go");
    CHECK(e.label == "go");
    CHECK(e.guard[0].op == Op::GE);
    CHECK(e.reset.at("x").coeffs.at("x") == Rat(2));
    CHECK(e.reset.at("x").constant == Rat(-1));
    CHECK(doc.problem.goal.constraints.empty());
    CHECK(doc.problem.depth == 3);
}

TEST_CASE("serialize then parse is the identity")
{
    ModelDocument doc = parse_model(kMinimal);
    std::string once = serialize_model(doc);
    ModelDocument back = parse_model(once);
    CHECK(back == doc);
    CHECK(serialize_model(back) == once);
}

TEST_CASE("every generator output round-trips")
{
    for (const auto& fam : benchmark_families()) {
        CAPTURE(fam);
        ModelDocument doc = fixture::bench(fam);
        std::string text = serialize_model(doc);
        CHECK(parse_model(text) == doc);
    }
    ModelDocument agent = fixture::bench("warehouse", {{"variant", "agent"}});
    CHECK(parse_model(serialize_model(agent)) == agent);
}

TEST_CASE("random documents round-trip")
{
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
        ModelDocument doc;
        doc.problem = oracle::random_problem(rng, 5, 8, 4);
        doc.metadata["seed"] = std::to_string(i);
        CHECK(parse_model(serialize_model(doc)) == doc);
    }
}

TEST_CASE("shipped models load and match their generators")
{
    const std::string dir = HXPLAIN_MODELS_DIR;
    CHECK(load_model(dir + "/rover.lhap.json") == fixture::bench("rover"));
    CHECK(load_model(dir + "/water_level.lhap.json") == fixture::bench("water_level"));
    CHECK(load_model(dir + "/warehouse_human.lhap.json") == fixture::bench("warehouse"));
    CHECK(load_model(dir + "/warehouse_agent.lhap.json") == fixture::bench("warehouse", {{"variant", "agent"}}));
}

TEST_CASE("syntax errors carry line and column")
{
    std::string bad = replace_once(kMinimal, "\"depth\": 3", "\"depth\": 3,");
    try {
        (void)parse_model(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 13);
        CHECK(e.column > 0);
        CHECK(std::string(e.what()).rfind("line 13", 0) == 0);
    }
}

TEST_CASE("structural errors carry a JSON pointer")
{
    auto pointer_of = [](const std::string& text) {
        try {
            (void)parse_model(text);
        } catch (const ParseError& e) {
            return e.pointer;
        }
        return std::string("<none>");
    };
    CHECK(pointer_of(replace_once(kMinimal, "\"depth\": 3", "\"depth\": 3, \"colour\": 1")) == "/colour");
    CHECK(pointer_of(replace_once(kMinimal, "\"op\": \">=\"", "\"op\": \"=>\"")) == "/edges/0/guard/0/op");
    CHECK(pointer_of(replace_once(kMinimal, "\"rhs\": \"1/20\"", "\"rhs\": \"1/0\"")) == "/edges/0/guard/0/rhs");
    CHECK(pointer_of(replace_once(kMinimal, "\"rhs\": 0.1", "\"rhs\": 1e-1")) == "/locations/a/invariant/0/rhs");
    CHECK(pointer_of(replace_once(kMinimal, "\"version\": 1", "\"version\": 2")) == "/version");
    CHECK(pointer_of(replace_once(kMinimal, "\"depth\": 3", "\"depth\": -3")) == "/depth");
    CHECK(pointer_of(replace_once(kMinimal, "\"flow\": {\"x\": [1, 1]}", "\"flow\": {\"x\": [1]}")) ==
          "/locations/a/flow/x");
}

TEST_CASE("duplicate keys are rejected")
{
    std::string dup = replace_once(kMinimal, "\"depth\": 3", "\"depth\": 3, \"depth\": 4");
    CHECK_THROWS_AS((void)parse_model(dup), ParseError);
}

TEST_CASE("semantically invalid models raise ValidationError")
{
    std::string bad = replace_once(kMinimal, "\"target\": \"b\"", "\"target\": \"zz\"");
    try {
        (void)parse_model(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unknown location zz") != std::string::npos);
    }
}

TEST_CASE("large integers and decimals stay exact")
{
    std::string big = replace_once(kMinimal, "\"rhs\": 0.1", "\"rhs\": 123456789012345678901234567890");
    ModelDocument doc = parse_model(big);
    CHECK(doc.problem.automaton.location("a").invariant[0].rhs.str() == "123456789012345678901234567890");
    CHECK(parse_model(serialize_model(doc)) == doc);

    std::string dec = replace_once(kMinimal, "\"rhs\": 0.1", "\"rhs\": -2.125");
    CHECK(parse_model(dec).problem.automaton.location("a").invariant[0].rhs == Rat(-17, 8));
}

TEST_CASE("load_model and save_model use files")
{
    auto path = std::filesystem::temp_directory_path() / "hxplain_io_test.lhap.json";
    ModelDocument doc = parse_model(kMinimal);
    save_model(doc, path.string());
    CHECK(load_model(path.string()) == doc);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)load_model(path.string()), Error);
}
