#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ccg/scenario.hpp"

using namespace ccg;
using nlohmann::json;

namespace {

std::string data_dir() {
  const char* env = std::getenv("CCG_DATA_DIR");
  return env != nullptr ? env : "data";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("contest forms parse and materialize") {
  SUBCASE("explicit gamma") {
    const auto spec = parse_contest(json::parse(
        R"({"reward": 1.0, "gamma": [1.0, 0.25]})"));
    const auto c = realize_contest(spec, 2);
    CHECK(c.gamma(2) == doctest::Approx(0.25));
  }
  SUBCASE("tullock with numeric and inf exponents") {
    const auto finite = parse_contest(json::parse(
        R"({"reward": 1.0, "tullock_tau": 1.2})"));
    CHECK(realize_contest(finite, 2).gamma(2) == doctest::Approx(0.2));
    const auto apa = parse_contest(json::parse(
        R"({"reward": 1.0, "tullock_tau": "inf"})"));
    CHECK(realize_contest(apa, 3).gamma(2) == 0.0);
    CHECK_THROWS_AS(
        parse_contest(json::parse(R"({"reward": 1.0, "tullock_tau": "oo"})")),
        std::invalid_argument);
  }
  SUBCASE("headcount-keyed exponents") {
    const auto spec = parse_contest(json::parse(
        R"({"reward": 1.0, "tau_by_k": {"1": "inf", "2": 0.0}})"));
    const auto c = realize_contest(spec, 2);
    CHECK(c.gamma(2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(realize_contest(spec, 3), std::invalid_argument);
  }
  SUBCASE("longer explicit profiles are truncated to the game") {
    const auto spec = parse_contest(json::parse(
        R"({"reward": 1.0, "gamma": [1.0, 0.4, 0.2, 0.1]})"));
    CHECK(realize_contest(spec, 2).max_contestants() == 2);
  }
  SUBCASE("unknown forms are rejected") {
    CHECK_THROWS_AS(parse_contest(json::parse(R"({"reward": 1.0})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_contest(json::parse(R"({"gamma": [1.0]})")),
                    std::invalid_argument);
  }
}

TEST_CASE("scenario parsing and validation") {
  const std::string base = R"({
    "m": 2, "n": 2, "rewards": [1.0, 1.0],
    "strategy_sets": [
      [{"reward": 1.0, "tullock_tau": 1.0}],
      [{"reward": 1.0, "tullock_tau": 2.0}]
    ]})";
  SUBCASE("well-formed input") {
    const auto s = parse_scenario(json::parse(base));
    CHECK(s.num_designers == 2);
    CHECK(s.selection == SelectionRule::kLowestFirstProbability);
    const auto instance = to_instance(s);
    CHECK(instance.profile_count() == 1);
  }
  SUBCASE("reward mismatch against the strategy set") {
    auto j = json::parse(base);
    j["rewards"] = {1.0, 2.0};
    CHECK_THROWS(to_instance(parse_scenario(j)));
  }
  SUBCASE("wrong set count") {
    auto j = json::parse(base);
    j["strategy_sets"].erase(1);
    CHECK_THROWS_AS(parse_scenario(j), std::invalid_argument);
  }
  SUBCASE("risk and selection fields") {
    auto j = json::parse(base);
    j["risk"] = "quartic";
    j["selection"] = "highest_p1";
    const auto s = parse_scenario(j);
    CHECK(s.risk.has_value());
    CHECK(s.risk->name() == "quartic");
    CHECK(s.selection == SelectionRule::kHighestFirstProbability);
    j["risk"] = {{"poly", {0.0, 2.0, -1.0}}};
    CHECK(parse_scenario(j).risk->apply(0.5) == doctest::Approx(0.75));
    j["risk"] = "bold";
    CHECK_THROWS_AS(parse_scenario(j), std::invalid_argument);
  }
}

TEST_CASE("bundled scenarios round-trip byte-identically") {
  for (const std::string name :
       {"ex1", "ex2", "ex-nonmono", "ex-wta", "ex-asym", "ex-risk",
        "welfare-ex"}) {
    const std::string path = data_dir() + "/" + name + ".json";
    const std::string text = read_file(path);
    const auto scenario = parse_scenario(json::parse(text));
    CHECK_MESSAGE(canonical_dump(scenario_to_json(scenario)) == text,
                  "non-canonical scenario file: ", path);
    CHECK_NOTHROW(to_instance(scenario));
  }
}

TEST_SUITE_END();
