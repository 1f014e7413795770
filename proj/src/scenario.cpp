#include "ccg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccg {

namespace {

double parse_tau(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("tau string must be \"inf\"");
  }
  if (!j.is_number()) {
    throw std::invalid_argument("tau must be a number or \"inf\"");
  }
  return j.get<double>();
}

nlohmann::json tau_to_json(double tau) {
  if (std::isinf(tau)) return "inf";
  return tau;
}

}  // namespace

ContestSpec parse_contest(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("reward")) {
    throw std::invalid_argument("a contest needs a \"reward\" field");
  }
  const double reward = j.at("reward").get<double>();
  if (j.contains("gamma")) {
    return ExplicitGammaSpec{reward, j.at("gamma").get<std::vector<double>>()};
  }
  if (j.contains("tullock_tau")) {
    return TullockSpec{reward, parse_tau(j.at("tullock_tau"))};
  }
  if (j.contains("tau_by_k")) {
    PiecewiseTullockSpec spec;
    spec.reward = reward;
    for (const auto& [key, value] : j.at("tau_by_k").items()) {
      spec.tau_by_headcount[std::stoi(key)] = parse_tau(value);
    }
    return spec;
  }
  throw std::invalid_argument(
      "a contest needs one of \"gamma\", \"tullock_tau\", \"tau_by_k\"");
}

nlohmann::json contest_to_json(const ContestSpec& spec) {
  nlohmann::json j;
  if (const auto* e = std::get_if<ExplicitGammaSpec>(&spec)) {
    j["reward"] = e->reward;
    j["gamma"] = e->gamma;
  } else if (const auto* t = std::get_if<TullockSpec>(&spec)) {
    j["reward"] = t->reward;
    j["tullock_tau"] = tau_to_json(t->tau);
  } else if (const auto* pw = std::get_if<PiecewiseTullockSpec>(&spec)) {
    j["reward"] = pw->reward;
    nlohmann::json taus = nlohmann::json::object();
    for (const auto& [k, tau] : pw->tau_by_headcount) {
      taus[std::to_string(k)] = tau_to_json(tau);
    }
    j["tau_by_k"] = taus;
  }
  return j;
}

GammaProfile realize_contest(const ContestSpec& spec, int n) {
  if (const auto* e = std::get_if<ExplicitGammaSpec>(&spec)) {
    GammaProfile profile(e->reward, e->gamma);
    if (profile.max_contestants() == n) return profile;
    return profile.truncated(n);
  }
  if (const auto* t = std::get_if<TullockSpec>(&spec)) {
    return tullock_gamma(*t, n);
  }
  return piecewise_tullock_gamma(std::get<PiecewiseTullockSpec>(spec), n);
}

Scenario parse_scenario(const nlohmann::json& j) {
  Scenario s;
  s.num_designers = j.at("m").get<int>();
  s.num_contestants = j.at("n").get<int>();
  s.rewards = j.at("rewards").get<std::vector<double>>();
  if (static_cast<int>(s.rewards.size()) != s.num_designers) {
    throw std::invalid_argument("rewards must have one entry per designer");
  }
  const auto& sets = j.at("strategy_sets");
  if (!sets.is_array() ||
      static_cast<int>(sets.size()) != s.num_designers) {
    throw std::invalid_argument(
        "strategy_sets must have one list per designer");
  }
  for (const auto& set : sets) {
    std::vector<ContestSpec> contests;
    for (const auto& c : set) contests.push_back(parse_contest(c));
    if (contests.empty()) {
      throw std::invalid_argument("strategy sets must not be empty");
    }
    s.strategy_sets.push_back(std::move(contests));
  }
  if (j.contains("risk")) {
    const auto& r = j.at("risk");
    if (r.is_string()) {
      const auto name = r.get<std::string>();
      if (name == "identity") {
        s.risk = RiskProfile::identity();
      } else if (name == "quartic") {
        s.risk = RiskProfile::quartic_averse();
      } else {
        throw std::invalid_argument("unknown risk profile \"" + name + "\"");
      }
    } else if (r.is_object() && r.contains("poly")) {
      s.risk = RiskProfile::polynomial(r.at("poly").get<std::vector<double>>());
    } else {
      throw std::invalid_argument("risk must be a name or {\"poly\": [...]}");
    }
  }
  if (j.contains("selection")) {
    const auto name = j.at("selection").get<std::string>();
    if (name == "lowest_p1") {
      s.selection = SelectionRule::kLowestFirstProbability;
    } else if (name == "highest_p1") {
      s.selection = SelectionRule::kHighestFirstProbability;
    } else {
      throw std::invalid_argument("unknown selection rule \"" + name + "\"");
    }
  }
  if (j.contains("tolerance")) {
    s.tolerance = j.at("tolerance").get<double>();
    if (!(s.tolerance > 0.0)) {
      throw std::invalid_argument("tolerance must be positive");
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open scenario file " + path);
  }
  nlohmann::json j;
  in >> j;
  return parse_scenario(j);
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["m"] = s.num_designers;
  j["n"] = s.num_contestants;
  j["rewards"] = s.rewards;
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& set : s.strategy_sets) {
    nlohmann::json one = nlohmann::json::array();
    for (const auto& c : set) one.push_back(contest_to_json(c));
    sets.push_back(one);
  }
  j["strategy_sets"] = sets;
  if (s.risk.has_value()) {
    if (s.risk->name() == "poly") {
      j["risk"] = nlohmann::json{{"poly", s.risk->coefficients()}};
    } else {
      j["risk"] = s.risk->name();
    }
  }
  if (s.selection == SelectionRule::kHighestFirstProbability) {
    j["selection"] = "highest_p1";
  }
  if (s.tolerance != 1e-9) {
    j["tolerance"] = s.tolerance;
  }
  return j;
}

std::string canonical_dump(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

CcgInstance to_instance(const Scenario& s) {
  std::vector<std::vector<GammaProfile>> sets;
  sets.reserve(s.strategy_sets.size());
  for (const auto& set : s.strategy_sets) {
    std::vector<GammaProfile> contests;
    contests.reserve(set.size());
    for (const auto& c : set) {
      contests.push_back(realize_contest(c, s.num_contestants));
    }
    sets.push_back(std::move(contests));
  }
  return CcgInstance(s.num_contestants, s.rewards, std::move(sets));
}

}  // namespace ccg
