#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pvss/sysfile.hpp"

using namespace pvss;

namespace {

const char* minimal = R"json({
  "version": 1, "n": 1,
  "K0": {"rank": 2}, "K1": {"rank": 0},
  "actions": [{"on_K0": [[1, 1], [0, 1]], "on_K1": []}]
})json";

}  // namespace

TEST_CASE("parse a minimal file") {
    ActionSpec spec = parse_system_file(minimal);
    CHECK(spec.n == 1);
    CHECK(spec.k0.rank() == 2);
    CHECK(spec.k1.is_trivial());
    CHECK(spec.action0[0].matrix().at(0, 1) == 1);
    validate_spec(spec);
}

TEST_CASE("parse presentation and invariant group forms") {
    ActionSpec spec = parse_system_file(R"json({
      "version": 1, "n": 1,
      "K0": {"presentation": [[2, 0], [0, 0]]},
      "K1": {"rank": 1, "torsion": [4]},
      "actions": [{"on_K0": [[1, 0], [0, 1]], "on_K1": [[1, 0], [0, 1]]}]
    })json");
    CHECK(spec.k0.invariant_string() == "Z + Z/2");
    CHECK(spec.k1.invariant_string() == "Z + Z/4");
}

TEST_CASE("parse d2 forms and flags") {
    ActionSpec amb = parse_system_file(R"json({
      "version": 1, "n": 2,
      "K0": {"rank": 1}, "K1": {"rank": 1},
      "actions": [{"on_K0": [[1]], "on_K1": [[1]]}, {"on_K0": [[1]], "on_K1": [[1]]}],
      "d2": {"q0": [[0]], "q1": [[5]]},
      "flags": {"k_trivial": true, "pointwise_inner": true, "assume_higher_vanish": true}
    })json");
    REQUIRE(amb.d2data.has_value());
    CHECK(!amb.d2data->is_pairwise());
    CHECK(amb.k_trivial);
    CHECK(amb.pointwise_inner);
    CHECK(amb.assume_higher_vanish);

    ActionSpec pw = parse_system_file(R"json({
      "version": 1, "n": 2,
      "K0": {"rank": 1}, "K1": {"rank": 1},
      "actions": [{"on_K0": [[1]], "on_K1": [[1]]}, {"on_K0": [[1]], "on_K1": [[1]]}],
      "d2": {"pairs": {"(1,2)": {"q0": [[0]], "q1": [[3]]}}},
      "flags": {"k_trivial": true}
    })json");
    REQUIRE(pw.d2data.has_value());
    CHECK(pw.d2data->is_pairwise());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_system_file("nonsense"), ParseError);
    CHECK_THROWS_AS(parse_system_file("{}"), ParseError);  // no version
    CHECK_THROWS_AS(parse_system_file(R"json({"version": 2, "n": 1})json"), ParseError);
    // both group encodings at once
    CHECK_THROWS_AS(parse_system_file(R"json({
      "version": 1, "n": 1,
      "K0": {"rank": 1, "presentation": []}, "K1": {"rank": 0},
      "actions": [{"on_K0": [[1]], "on_K1": []}]
    })json"),
                    ParseError);
    // ragged matrix
    CHECK_THROWS_AS(parse_system_file(R"json({
      "version": 1, "n": 1,
      "K0": {"rank": 2}, "K1": {"rank": 0},
      "actions": [{"on_K0": [[1, 0], [0]], "on_K1": []}]
    })json"),
                    ParseError);
    // bad pair key
    CHECK_THROWS_AS(parse_system_file(R"json({
      "version": 1, "n": 2,
      "K0": {"rank": 1}, "K1": {"rank": 1},
      "actions": [{"on_K0": [[1]], "on_K1": [[1]]}, {"on_K0": [[1]], "on_K1": [[1]]}],
      "d2": {"pairs": {"1-2": {"q0": [[0]], "q1": [[0]]}}}
    })json"),
                    ParseError);
}

TEST_CASE("dimension mismatches are validation errors, not parse errors") {
    CHECK_THROWS_AS(parse_system_file(R"json({
      "version": 1, "n": 1,
      "K0": {"rank": 2}, "K1": {"rank": 0},
      "actions": [{"on_K0": [[1]], "on_K1": []}]
    })json"),
                    std::invalid_argument);
}

TEST_CASE("machine output round-trips and is deterministic") {
    ActionSpec spec = parse_system_file(minimal);
    RunResult run = run_pages(spec);
    auto j1 = pages_json(run, minimal).dump(2);
    auto j2 = pages_json(run_pages(spec), minimal).dump(2);
    CHECK(j1 == j2);

    // reported groups re-parse to identical invariants
    auto parsed = nlohmann::json::parse(j1);
    for (const auto& pg : parsed.at("pages"))
        for (const auto& cell : pg.at("cells")) {
            std::vector<Int> tor;
            for (const auto& t : cell.at("torsion")) tor.push_back(Int(t.get<std::string>()));
            FgAbGroup g = FgAbGroup::from_invariants(cell.at("rank").get<std::size_t>(), tor);
            CHECK(g.rank() == cell.at("rank").get<std::size_t>());
        }
}

TEST_CASE("bare matrix parsing") {
    IntMatrix m = parse_bare_matrix("[[1, 2], [3, 4]]");
    CHECK(m.rows() == 2);
    CHECK(m.at(1, 0) == 3);
    CHECK(parse_bare_matrix("[]").rows() == 0);
    CHECK_THROWS_AS(parse_bare_matrix("{\"a\": 1}"), ParseError);
}

TEST_CASE("input hash is stable") {
    CHECK(input_hash("") == "cbf29ce484222325");
    CHECK(input_hash("abc") == input_hash("abc"));
    CHECK(input_hash("abc") != input_hash("abd"));
}

TEST_CASE("table rendering mentions every invariant") {
    ActionSpec spec = parse_system_file(minimal);
    RunResult run = run_pages(spec);
    std::string table = render_pages_table(run);
    CHECK(table.find("E_1") != std::string::npos);
    CHECK(table.find("E_2") != std::string::npos);
    CHECK(table.find("Z") != std::string::npos);
}
