#ifndef CCG_SCENARIO_HPP
#define CCG_SCENARIO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ccg/designer_game.hpp"
#include "ccg/risk.hpp"

namespace ccg {

// A contest as written in a scenario file; the original form is preserved so
// canonical serialization round-trips.
struct ExplicitGammaSpec {
  double reward;
  std::vector<double> gamma;
};

using ContestSpec =
    std::variant<ExplicitGammaSpec, TullockSpec, PiecewiseTullockSpec>;

// Materializes a spec into the profile used at game size n.
GammaProfile realize_contest(const ContestSpec& spec, int n);

struct Scenario {
  int num_designers = 0;   // m
  int num_contestants = 0; // n
  std::vector<double> rewards;
  std::vector<std::vector<ContestSpec>> strategy_sets;
  std::optional<RiskProfile> risk;
  SelectionRule selection = SelectionRule::kLowestFirstProbability;
  double tolerance = 1e-9;
};

// JSON forms:
//   contest: {"reward": r, "gamma": [...]}
//          | {"reward": r, "tullock_tau": t}        ("inf" accepted for t)
//          | {"reward": r, "tau_by_k": {"1": t1, ...}}
//   scenario: {"m":, "n":, "rewards": [...], "strategy_sets": [[...], ...],
//              "risk":, "selection":, "tolerance":}  (last three optional)
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);
nlohmann::json contest_to_json(const ContestSpec& spec);
ContestSpec parse_contest(const nlohmann::json& j);

// The canonical file form: two-space-indented dump with sorted keys and a
// trailing newline. serialize(parse(file)) is byte-identical for files in
// this form.
std::string canonical_dump(const nlohmann::json& j);

CcgInstance to_instance(const Scenario& s);

}  // namespace ccg

#endif  // CCG_SCENARIO_HPP
