// Command-line front end: scenario ingestion, solver dispatch, bundled
// example reproduction, and report emission in text/json/csv.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccg/contest.hpp"
#include "ccg/designer_game.hpp"
#include "ccg/errors.hpp"
#include "ccg/participation.hpp"
#include "ccg/pure_assignment.hpp"
#include "ccg/risk.hpp"
#include "ccg/scenario.hpp"
#include "ccg/simulate.hpp"
#include "ccg/welfare.hpp"

#ifndef CCG_DEFAULT_DATA_DIR
#define CCG_DEFAULT_DATA_DIR "data"
#endif

namespace {

using nlohmann::json;

// Stable exit codes: 0 success, 2 parse/usage, 3 unsupported model,
// 4 enumeration cap exceeded, 5 reproduction or verification failure.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitCap = 4;
constexpr int kExitReproduce = 5;

struct GlobalOptions {
  std::string scenario_path;
  std::string data_dir = CCG_DEFAULT_DATA_DIR;
  std::string format = "text";
  double tol = 1e-9;
  bool tol_set = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1'000'000;
};

// CLI --tol wins over the scenario's solver tolerance.
double effective_tol(const GlobalOptions& g, const ccg::Scenario& s) {
  return g.tol_set ? g.tol : s.tolerance;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> parse_profile(const std::string& text, int expected) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stoi(item));
  }
  if (static_cast<int>(out.size()) != expected) {
    throw std::invalid_argument("profile needs " + std::to_string(expected) +
                                " comma-separated indices");
  }
  return out;
}

ccg::Scenario require_scenario(const GlobalOptions& g) {
  if (g.scenario_path.empty()) {
    throw std::invalid_argument("this command needs --scenario <file>");
  }
  return ccg::load_scenario(g.scenario_path);
}

json outcome_to_json(const ccg::ProfileOutcome& out) {
  json j;
  j["p"] = out.equilibrium.probabilities;
  j["support"] = out.equilibrium.support;
  j["residual"] = out.equilibrium.residual;
  j["contestant_utility"] = out.contestant_utility;
  j["designer_utilities"] = out.designer_utilities;
  j["welfare"] = {{"W_D", out.welfare.designers},
                  {"W_C", out.welfare.contestants},
                  {"W_S", out.welfare.total}};
  return j;
}

std::string csv_header(int m) {
  std::string line = "profile";
  for (int i = 1; i <= m; ++i) line += ",p_" + std::to_string(i);
  for (int i = 1; i <= m; ++i) line += ",u_" + std::to_string(i);
  line += ",u_c,W_D,W_C,W_S";
  return line;
}

std::string profile_label(const ccg::StrategyProfile& profile) {
  std::string label;
  for (std::size_t i = 0; i < profile.choice.size(); ++i) {
    if (i) label += "|";
    label += std::to_string(profile.choice[i]);
  }
  return label;
}

std::string csv_row(const ccg::StrategyProfile& profile,
                    const ccg::ProfileOutcome& out) {
  std::string line = profile_label(profile);
  for (double p : out.equilibrium.probabilities) line += "," + fmt_full(p);
  for (double u : out.designer_utilities) line += "," + fmt_full(u);
  line += "," + fmt_full(out.contestant_utility);
  line += "," + fmt_full(out.welfare.designers);
  line += "," + fmt_full(out.welfare.contestants);
  line += "," + fmt_full(out.welfare.total);
  return line;
}

void print_outcome_text(const ccg::StrategyProfile& profile,
                        const ccg::ProfileOutcome& out) {
  std::cout << "profile " << profile_label(profile) << "\n";
  std::cout << "  p        =";
  for (double p : out.equilibrium.probabilities) std::cout << " " << fmt6(p);
  std::cout << "\n  support  =";
  for (auto s : out.equilibrium.support) std::cout << " " << s;
  std::cout << "\n  residual = " << fmt6(out.equilibrium.residual)
            << "\n  u_c      = " << fmt6(out.contestant_utility)
            << "\n  u        =";
  for (double u : out.designer_utilities) std::cout << " " << fmt6(u);
  std::cout << "\n  W_D/W_C/W_S = " << fmt6(out.welfare.designers) << " / "
            << fmt6(out.welfare.contestants) << " / "
            << fmt6(out.welfare.total) << "\n";
}

// ---------------------------------------------------------------------------
// gamma

int cmd_gamma(const GlobalOptions& g, const std::string& contest_json,
              double reward, const std::string& tau_text, int n) {
  ccg::ContestSpec spec;
  if (!contest_json.empty()) {
    spec = ccg::parse_contest(json::parse(contest_json));
  } else if (!tau_text.empty()) {
    const double tau = tau_text == "inf"
                           ? std::numeric_limits<double>::infinity()
                           : std::stod(tau_text);
    spec = ccg::TullockSpec{reward, tau};
  } else {
    throw std::invalid_argument("need --tullock <tau> or --contest <json>");
  }
  const ccg::GammaProfile profile = ccg::realize_contest(spec, n);
  const bool mdu = ccg::is_mdu(profile);
  const bool frd = ccg::is_full_rent_dissipation(profile);

  if (g.format == "json") {
    json j;
    j["reward"] = profile.reward();
    j["gamma"] = std::vector<double>(profile.gamma_values().begin(),
                                     profile.gamma_values().end());
    j["mdu"] = mdu;
    j["full_rent_dissipation"] = frd;
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << "k,gamma\n";
    for (int k = 1; k <= n; ++k) {
      std::cout << k << "," << fmt_full(profile.gamma(k)) << "\n";
    }
  } else {
    std::cout << "k     gamma(k)\n";
    for (int k = 1; k <= n; ++k) {
      std::printf("%-5d %s\n", k, fmt6(profile.gamma(k)).c_str());
    }
    std::cout << "mdu: " << (mdu ? "yes" : "no")
              << "   full rent dissipation: " << (frd ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const GlobalOptions& g, const std::string& profile_text) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  ccg::StrategyProfile profile{
      parse_profile(profile_text, instance.num_designers())};
  const auto outcomes =
      ccg::evaluate_profile(instance, profile, scenario.selection);

  bool residual_ok = true;
  for (const auto& out : outcomes) {
    residual_ok =
        residual_ok && out.equilibrium.residual <= effective_tol(g, scenario);
  }

  if (g.format == "json") {
    json j = json::array();
    for (const auto& out : outcomes) j.push_back(outcome_to_json(out));
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << csv_header(instance.num_designers()) << "\n";
    for (const auto& out : outcomes) {
      std::cout << csv_row(profile, out) << "\n";
    }
  } else {
    for (const auto& out : outcomes) print_outcome_text(profile, out);
    if (outcomes.size() > 1) {
      std::cout << outcomes.size()
                << " contestant equilibria (selected first)\n";
    }
  }
  if (!residual_ok) {
    std::cerr << "equilibrium residual exceeds tolerance "
              << fmt6(effective_tol(g, scenario)) << "\n";
    return kExitReproduce;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// equilibria

int cmd_equilibria(const GlobalOptions& g, std::size_t cap) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  const auto equilibria =
      ccg::enumerate_equilibria(instance, scenario.selection, cap);

  bool all_mdu = true;
  for (const auto& set : instance.strategy_sets()) {
    for (const auto& c : set) {
      all_mdu = all_mdu && ccg::is_mdu(c);
    }
  }
  std::optional<ccg::MduCharacterization> character;
  if (all_mdu) {
    try {
      character =
          ccg::characterize_mdu_equilibria(instance, scenario.selection, cap);
    } catch (const std::invalid_argument&) {
      // No pointwise-minimal member in some set: enumeration stands alone.
    }
  }

  if (g.format == "json") {
    json j;
    j["equilibria"] = json::array();
    for (const auto& e : equilibria) j["equilibria"].push_back(e.choice);
    if (character) {
      j["characterization"] = {
          {"support", character->support},
          {"reference_p", character->reference_probabilities},
          {"matches", character->matches},
          {"max_probability_deviation", character->max_probability_deviation}};
    }
    std::cout << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    std::cout << csv_header(instance.num_designers()) << "\n";
    ccg::ProfileEvaluator eval(instance, scenario.selection);
    for (const auto& e : equilibria) {
      std::cout << csv_row(e, eval.outcomes(e)[0]) << "\n";
    }
  } else {
    std::cout << equilibria.size() << " equilibria\n";
    for (const auto& e : equilibria) {
      std::cout << "  " << profile_label(e) << "\n";
    }
    if (character) {
      std::cout << "support P = {";
      for (std::size_t i = 0; i < character->support.size(); ++i) {
        std::cout << (i ? ", " : " ") << character->support[i];
      }
      std::cout << " }\n";
      std::cout << "reference p =";
      for (double p : character->reference_probabilities) {
        std::cout << " " << fmt6(p);
      }
      std::cout << "\nmrd characterization "
                << (character->matches ? "matches" : "DOES NOT match")
                << "; max probability deviation = "
                << fmt6(character->max_probability_deviation) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dominance

int cmd_dominance(const GlobalOptions& g, int designer, int contest,
                  std::size_t cap) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  if (designer < 0 || designer >= instance.num_designers()) {
    throw std::invalid_argument("designer index out of range");
  }
  const auto& set =
      instance.strategy_sets()[static_cast<std::size_t>(designer)];
  std::vector<int> to_check;
  if (contest >= 0) {
    if (contest >= static_cast<int>(set.size())) {
      throw std::invalid_argument("contest index out of range");
    }
    to_check.push_back(contest);
  } else {
    for (int c = 0; c < static_cast<int>(set.size()); ++c) {
      to_check.push_back(c);
    }
  }

  json j = json::array();
  for (int c : to_check) {
    const auto result =
        ccg::is_dominant(instance, designer, c, scenario.selection, cap);
    if (g.format == "json") {
      json entry;
      entry["contest"] = c;
      entry["dominant"] = result.dominant;
      if (!result.dominant) {
        entry["witness_opponents"] = result.witness_opponents->choice;
        entry["better_alternative"] = *result.better_alternative;
      }
      j.push_back(entry);
    } else {
      std::cout << "designer " << designer << " contest " << c << ": "
                << (result.dominant ? "dominant" : "not dominant");
      if (!result.dominant) {
        std::cout << " (against " << profile_label(*result.witness_opponents)
                  << ", better: " << *result.better_alternative << ")";
      }
      std::cout << "\n";
    }
  }
  if (g.format == "json") std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pareto

int cmd_pareto(const GlobalOptions& g, const std::string& profile_text,
               std::size_t cap) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  ccg::StrategyProfile profile{
      parse_profile(profile_text, instance.num_designers())};
  const auto result =
      ccg::pareto_check(instance, profile, scenario.selection, cap);
  if (g.format == "json") {
    json j;
    j["pareto_optimal"] = result.pareto_optimal;
    if (result.improvement) j["improvement"] = result.improvement->choice;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "profile " << profile_label(profile) << ": "
              << (result.pareto_optimal ? "pareto optimal"
                                        : "not pareto optimal");
    if (result.improvement) {
      std::cout << " (improved by " << profile_label(*result.improvement)
                << ")";
    }
    std::cout << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// welfare

int cmd_welfare(const GlobalOptions& g, const std::string& profile_text,
                bool run_checks, std::size_t cap) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  ccg::StrategyProfile profile{
      parse_profile(profile_text, instance.num_designers())};
  const auto report = ccg::welfare_of(instance, profile, scenario.selection);

  json j;
  j["W_D"] = report.designers;
  j["W_C"] = report.contestants;
  j["W_S"] = report.total;
  j["holder_bound"] = report.holder_bound;
  j["per_contest_reach"] = report.per_contest_reach;
  if (run_checks) {
    const auto max_verdict =
        ccg::check_ws_maximality(instance, scenario.selection, cap);
    const auto min_verdict =
        ccg::check_wc_minimality(instance, scenario.selection, cap);
    j["ws_maximality"] = {
        {"case", ccg::welfare_case_name(max_verdict.first_case)},
        {"holds", max_verdict.holds},
        {"argmax_profile", max_verdict.argmax_profile.choice},
        {"max_W_S", max_verdict.max_total},
        {"mrd_W_S", max_verdict.mrd_total}};
    j["wc_minimality"] = {{"holds", min_verdict.holds},
                          {"worst_margin", min_verdict.worst_margin}};
  }

  if (g.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "W_D = " << fmt6(report.designers)
              << "\nW_C = " << fmt6(report.contestants)
              << "\nW_S = " << fmt6(report.total)
              << "\nholder bound = " << fmt6(report.holder_bound) << "\nreach =";
    for (double r : report.per_contest_reach) std::cout << " " << fmt6(r);
    std::cout << "\n";
    if (run_checks) {
      std::cout << "W_S maximality: case=" << j["ws_maximality"]["case"]
                << " holds="
                << (j["ws_maximality"]["holds"].get<bool>() ? "yes" : "no")
                << " argmax=" << j["ws_maximality"]["argmax_profile"].dump()
                << "\n";
      std::cout << "W_C minimality: holds="
                << (j["wc_minimality"]["holds"].get<bool>() ? "yes" : "no")
                << " worst margin="
                << fmt6(j["wc_minimality"]["worst_margin"].get<double>())
                << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// risk

int cmd_risk(const GlobalOptions& g, const std::string& profile_text,
             double scan_opponent_tau, double grid_min, double grid_max,
             double grid_step) {
  const auto scenario = require_scenario(g);
  const auto risk = scenario.risk.value_or(ccg::RiskProfile::identity());
  const int n = scenario.num_contestants;

  if (scan_opponent_tau >= 0.0) {
    const auto grid = ccg::uniform_tau_grid(grid_min, grid_max, grid_step);
    const auto scan =
        ccg::risk_averse_best_response_scan(grid, scan_opponent_tau, n, risk);
    if (g.format == "json") {
      json j;
      j["opponent_tau"] = scan_opponent_tau;
      j["best_tau"] = scan.best_tau;
      j["best_utility"] = scan.best_utility;
      j["taus"] = scan.taus;
      j["utilities"] = scan.utilities;
      std::cout << j.dump(2) << "\n";
    } else if (g.format == "csv") {
      std::cout << "tau,utility\n";
      for (std::size_t i = 0; i < scan.taus.size(); ++i) {
        std::cout << fmt_full(scan.taus[i]) << ","
                  << fmt_full(scan.utilities[i]) << "\n";
      }
    } else {
      std::cout << "opponent tau = " << fmt6(scan_opponent_tau)
                << "\nbest response tau = " << fmt6(scan.best_tau)
                << " with utility " << fmt6(scan.best_utility) << " over "
                << scan.taus.size() << " grid points\n";
    }
    return kExitOk;
  }

  const auto instance = ccg::to_instance(scenario);
  if (instance.num_designers() != 2) {
    throw ccg::UnsupportedModelError(
        "risk-averse participation solving supports two contests");
  }
  ccg::StrategyProfile profile{parse_profile(profile_text, 2)};
  const auto& c1 = instance.contest(0, profile.choice[0]);
  const auto& c2 = instance.contest(1, profile.choice[1]);
  const auto equilibria = ccg::solve_two_contest_risk_averse(c1, c2, n, risk);

  bool residual_ok = true;
  json j = json::array();
  for (const auto& eq : equilibria) {
    residual_ok = residual_ok && eq.residual <= effective_tol(g, scenario);
    const double u1 = ccg::designer_utility(c1, eq.probabilities[0], n);
    const double u2 = ccg::designer_utility(c2, eq.probabilities[1], n);
    if (g.format == "json") {
      json entry;
      entry["p"] = eq.probabilities;
      entry["residual"] = eq.residual;
      entry["transformed_utility"] = eq.common_utility;
      entry["designer_utilities"] = {u1, u2};
      j.push_back(entry);
    } else {
      std::cout << "p = (" << fmt6(eq.probabilities[0]) << ", "
                << fmt6(eq.probabilities[1]) << ")  residual "
                << fmt6(eq.residual) << "  u = (" << fmt6(u1) << ", "
                << fmt6(u2) << ")\n";
    }
  }
  if (g.format == "json") std::cout << j.dump(2) << "\n";
  if (!residual_ok) {
    std::cerr << "equilibrium residual exceeds tolerance "
              << fmt6(effective_tol(g, scenario)) << "\n";
    return kExitReproduce;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pure-ne

int cmd_pure_ne(const GlobalOptions& g, const std::string& profile_text,
                const std::string& assignment_text, std::size_t cap) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  ccg::StrategyProfile profile{
      parse_profile(profile_text, instance.num_designers())};
  std::vector<ccg::GammaProfile> contests;
  for (int i = 0; i < instance.num_designers(); ++i) {
    contests.push_back(instance.contest(i, profile.choice[static_cast<std::size_t>(i)]));
  }
  const int n = instance.num_contestants();

  const auto designer_payoffs = [&](const ccg::PureAssignment& a) {
    const auto counts = a.headcounts(instance.num_designers());
    std::vector<double> u(contests.size());
    for (std::size_t i = 0; i < contests.size(); ++i) {
      u[i] = counts[i] > 0 ? ccg::expected_total_effort(contests[i], counts[i])
                           : 0.0;
    }
    return u;
  };

  if (!assignment_text.empty()) {
    ccg::PureAssignment assignment{parse_profile(assignment_text, n)};
    const bool ok = ccg::is_pure_equilibrium(contests, assignment);
    const auto u = designer_payoffs(assignment);
    if (g.format == "json") {
      json j;
      j["assignment"] = assignment.contest_of;
      j["pure_equilibrium"] = ok;
      j["designer_utilities"] = u;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "assignment " << profile_label({assignment.contest_of})
                << ": " << (ok ? "pure equilibrium" : "not an equilibrium")
                << "  u =";
      for (double v : u) std::cout << " " << fmt6(v);
      std::cout << "\n";
    }
    return kExitOk;
  }

  const auto all = ccg::enumerate_pure_equilibria(contests, n, cap);
  if (g.format == "json") {
    json j = json::array();
    for (const auto& a : all) {
      json entry;
      entry["assignment"] = a.contest_of;
      entry["designer_utilities"] = designer_payoffs(a);
      j.push_back(entry);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << all.size() << " pure equilibria\n";
    for (const auto& a : all) {
      std::cout << "  " << profile_label({a.contest_of}) << "  u =";
      for (double v : designer_payoffs(a)) std::cout << " " << fmt6(v);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const GlobalOptions& g, const std::string& profile_text) {
  const auto scenario = require_scenario(g);
  const auto instance = ccg::to_instance(scenario);
  ccg::StrategyProfile profile{
      parse_profile(profile_text, instance.num_designers())};
  const auto outcomes =
      ccg::evaluate_profile(instance, profile, scenario.selection);
  const auto& out = outcomes[0];
  const int n = instance.num_contestants();

  std::vector<ccg::GammaProfile> contests;
  for (int i = 0; i < instance.num_designers(); ++i) {
    contests.push_back(instance.contest(i, profile.choice[static_cast<std::size_t>(i)]));
  }
  const ccg::SimConfig cfg{g.trials, g.seed};

  bool ok = true;
  json rows = json::array();
  for (std::size_t i = 0; i < contests.size(); ++i) {
    const double p_i = out.equilibrium.probabilities[i];
    const double analytic_beta = ccg::beta(contests[i], p_i, n);
    const auto est_beta =
        ccg::mc_contestant_utility(contests, out.equilibrium.probabilities, n,
                                   i, cfg);
    const double z_beta =
        est_beta.stderr_mean > 0.0
            ? (est_beta.mean - analytic_beta) / est_beta.stderr_mean
            : (est_beta.mean == analytic_beta ? 0.0 : 1e9);

    const double analytic_u = out.designer_utilities[i];
    const auto est_u = ccg::mc_designer_utility(contests[i], p_i, n, cfg);
    const double z_u = est_u.stderr_mean > 0.0
                           ? (est_u.mean - analytic_u) / est_u.stderr_mean
                           : (est_u.mean == analytic_u ? 0.0 : 1e9);
    ok = ok && std::abs(z_beta) <= 4.0 && std::abs(z_u) <= 4.0;

    if (g.format == "json") {
      rows.push_back({{"contest", i},
                      {"beta_analytic", analytic_beta},
                      {"beta_mc", est_beta.mean},
                      {"beta_stderr", est_beta.stderr_mean},
                      {"beta_z", z_beta},
                      {"u_analytic", analytic_u},
                      {"u_mc", est_u.mean},
                      {"u_stderr", est_u.stderr_mean},
                      {"u_z", z_u}});
    } else {
      std::cout << "contest " << i << ": beta " << fmt6(analytic_beta)
                << " vs mc " << fmt6(est_beta.mean) << " (z="
                << fmt6(z_beta) << ")  u " << fmt6(analytic_u) << " vs mc "
                << fmt6(est_u.mean) << " (z=" << fmt6(z_u) << ")\n";
    }
  }
  const double deviation = ccg::max_profitable_deviation(
      contests, out.equilibrium.probabilities, n);
  if (g.format == "json") {
    json j;
    j["rows"] = rows;
    j["max_profitable_deviation"] = deviation;
    j["trials"] = g.trials;
    j["seed"] = g.seed;
    j["pass"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "max profitable deviation = " << fmt6(deviation) << "\n"
              << (ok ? "all estimates within 4 stderr"
                     : "ESTIMATE OUTSIDE 4 STDERR")
              << "\n";
  }
  return ok ? kExitOk : kExitReproduce;
}

// ---------------------------------------------------------------------------
// reproduce

struct CheckTable {
  bool all_pass = true;

  void row(const std::string& name, double expected, double actual,
           double tol) {
    const bool pass = std::abs(expected - actual) <= tol;
    all_pass = all_pass && pass;
    std::printf("%-34s expected %-13s got %-13s tol %-8s %s\n", name.c_str(),
                fmt6(expected).c_str(), fmt6(actual).c_str(),
                fmt6(tol).c_str(), pass ? "PASS" : "FAIL");
  }

  void flag(const std::string& name, bool expected, bool actual) {
    const bool pass = expected == actual;
    all_pass = all_pass && pass;
    std::printf("%-34s expected %-13s got %-13s %s\n", name.c_str(),
                expected ? "true" : "false", actual ? "true" : "false",
                pass ? "PASS" : "FAIL");
  }
};

ccg::Scenario load_bundled(const GlobalOptions& g, const std::string& name) {
  return ccg::load_scenario(g.data_dir + "/" + name + ".json");
}

int reproduce_ex1(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "ex1"));
  CheckTable t;
  const auto cc = ccg::evaluate_profile(instance, {{1, 1}});
  t.row("u_1(C,C)", 0.7812, cc[0].designer_utilities[0], 5e-4);
  t.row("u_2(C,C)", 0.7812, cc[0].designer_utilities[1], 5e-4);
  const auto ac = ccg::evaluate_profile(instance, {{0, 1}});
  t.row("p_1(APA,C)", 0.4061, ac[0].equilibrium.probabilities[0], 5e-4);
  t.row("p_2(APA,C)", 0.5939, ac[0].equilibrium.probabilities[1], 5e-4);
  t.row("u_1(APA,C)", 0.7761, ac[0].designer_utilities[0], 5e-4);
  t.row("u_2(APA,C)", 0.7323, ac[0].designer_utilities[1], 5e-4);
  t.flag("(C,C) is equilibrium", true, ccg::is_equilibrium(instance, {{1, 1}}).holds);
  t.flag("APA dominant for designer 1", false,
         ccg::is_dominant(instance, 0, 0).dominant);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_ex_nonmono(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "ex-nonmono"));
  CheckTable t;
  const auto cc = ccg::evaluate_profile(instance, {{1, 1}});
  t.row("u_1(C,C)", 0.9658, cc[0].designer_utilities[0], 5e-4);
  const auto ac = ccg::evaluate_profile(instance, {{0, 1}});
  t.row("p_1(APA,C)", 0.4125, ac[0].equilibrium.probabilities[0], 5e-4);
  t.row("p_2(APA,C)", 0.5875, ac[0].equilibrium.probabilities[1], 5e-4);
  t.row("u_1(APA,C)", 0.9607, ac[0].designer_utilities[0], 5e-4);
  t.row("u_2(APA,C)", 0.9509, ac[0].designer_utilities[1], 5e-4);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_ex_wta(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "ex-wta"));
  CheckTable t;
  // designer 1's menu: 0 = all-pay auction, 1 = tullock tau=1.2; designer 2
  // plays the headcount-dependent contest (singleton set).
  const auto apa = ccg::evaluate_profile(instance, {{0, 0}});
  const auto t12 = ccg::evaluate_profile(instance, {{1, 0}});
  t.row("p_1(APA,C)", 0.366965, apa[0].equilibrium.probabilities[0], 5e-6);
  t.row("p_1(tau=1.2,C)", 0.519786, t12[0].equilibrium.probabilities[0], 5e-6);
  t.row("u_1(APA,C)", 0.929759, apa[0].designer_utilities[0], 5e-6);
  t.row("u_1(tau=1.2,C)", 0.930121, t12[0].designer_utilities[0], 5e-6);
  t.flag("tau=1.2 beats APA", true,
         t12[0].designer_utilities[0] > apa[0].designer_utilities[0]);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_welfare_ex(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "welfare-ex"));
  CheckTable t;
  const auto wcc = ccg::welfare_of(instance, {{0, 0}});
  t.row("W_S(C,C)", 1.5, wcc.total, 1e-9);
  const auto wct = ccg::welfare_of(instance, {{0, 1}});
  t.row("W_S(C,T)", 1441.0 / 961.0, wct.total, 1e-9);
  const auto ct = ccg::evaluate_profile(instance, {{0, 1}});
  t.row("p_1(C,T)", 16.0 / 31.0, ct[0].equilibrium.probabilities[0], 1e-9);
  t.row("p_2(C,T)", 15.0 / 31.0, ct[0].equilibrium.probabilities[1], 1e-9);
  const auto max_verdict = ccg::check_ws_maximality(instance);
  t.flag("W_S maximal at MRD profile", false, max_verdict.holds);
  const auto min_verdict = ccg::check_wc_minimality(instance);
  t.flag("W_C minimal at MRD profile", true, min_verdict.holds);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_ex2(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "ex2"));
  CheckTable t;
  const auto equilibria = ccg::enumerate_equilibria(instance);
  // Expected: exactly the profiles (c1, APA, APA), c1 free.
  const std::size_t s1 = instance.strategy_sets()[0].size();
  bool expected_set = equilibria.size() == s1;
  for (const auto& e : equilibria) {
    expected_set = expected_set && e.choice[1] == 0 && e.choice[2] == 0;
  }
  t.flag("equilibria = {(C_1, APA, APA)}", true, expected_set);
  const auto out = ccg::evaluate_profile(instance, {{0, 0, 0}});
  t.row("p_1", 0.0, out[0].equilibrium.probabilities[0], 1e-9);
  t.row("p_2", 0.5, out[0].equilibrium.probabilities[1], 1e-9);
  t.row("p_3", 0.5, out[0].equilibrium.probabilities[2], 1e-9);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_ex_risk(const GlobalOptions& g) {
  const auto scenario = load_bundled(g, "ex-risk");
  const auto instance = ccg::to_instance(scenario);
  const auto risk = scenario.risk.value_or(ccg::RiskProfile::quartic_averse());
  const int n = instance.num_contestants();
  CheckTable t;
  // menu: 0 = tau=1, 1 = tau=2
  const auto& tau1 = instance.contest(0, 0);
  const auto& tau2 = instance.contest(1, 1);
  const auto eq = ccg::solve_two_contest_risk_averse(tau1, tau2, n, risk);
  t.row("p_1(tau=1 vs tau=2)", 256.0 / 337.0, eq[0].probabilities[0], 1e-9);
  const double u1 = ccg::designer_utility(tau1, eq[0].probabilities[0], n);
  t.row("u_1(tau=1)", 0.288529, u1, 5e-6);
  const auto& tau2_own = instance.contest(0, 1);
  const auto eq22 = ccg::solve_two_contest_risk_averse(tau2_own, tau2, n, risk);
  const double u_22 = ccg::designer_utility(tau2_own, eq22[0].probabilities[0], n);
  t.row("u_1(tau=2)", 0.25, u_22, 1e-9);
  t.flag("tau=1 beats tau=2", true, u1 > u_22);
  const auto grid = ccg::uniform_tau_grid(0.0, 2.0, 1e-3);
  const auto scan =
      ccg::risk_averse_best_response_scan(grid, 2.0 / 3.0, n, risk);
  t.row("best response to tau=2/3", 2.0 / 3.0, scan.best_tau, 1e-3);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int reproduce_ex_asym(const GlobalOptions& g) {
  const auto instance = ccg::to_instance(load_bundled(g, "ex-asym"));
  CheckTable t;
  std::vector<ccg::GammaProfile> contests{instance.contest(0, 0),
                                          instance.contest(1, 0)};
  const ccg::PureAssignment split{{0, 0, 1}};
  t.flag("{1,2}->contest 1, {3}->contest 2 is pure NE", true,
         ccg::is_pure_equilibrium(contests, split));
  t.flag("matches brute-force check", true,
         ccg::brute_force_pure_ne_check(contests, split));
  t.row("designer 1 utility", 0.75,
        ccg::expected_total_effort(contests[0], 2), 1e-12);
  const auto all = ccg::enumerate_pure_equilibria(contests, 3);
  bool contains = false;
  for (const auto& a : all) contains = contains || a == split;
  t.flag("enumeration finds the assignment", true, contains);
  return t.all_pass ? kExitOk : kExitReproduce;
}

int cmd_reproduce(const GlobalOptions& g, const std::string& id) {
  if (id == "ex1") return reproduce_ex1(g);
  if (id == "ex2") return reproduce_ex2(g);
  if (id == "ex-nonmono") return reproduce_ex_nonmono(g);
  if (id == "ex-wta") return reproduce_ex_wta(g);
  if (id == "ex-asym") return reproduce_ex_asym(g);
  if (id == "ex-risk") return reproduce_ex_risk(g);
  if (id == "welfare-ex") return reproduce_welfare_ex(g);
  if (id == "all") {
    int worst = kExitOk;
    for (const char* each : {"ex1", "ex2", "ex-nonmono", "ex-wta", "ex-asym",
                             "ex-risk", "welfare-ex"}) {
      std::cout << "--- " << each << " ---\n";
      worst = std::max(worst, cmd_reproduce(g, each));
    }
    return worst;
  }
  throw std::invalid_argument("unknown example id \"" + id + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions g;
  CLI::App app{"Contest competition game solver"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--scenario", g.scenario_path, "Scenario JSON file");
  app.add_option("--data", g.data_dir, "Directory with bundled scenarios");
  auto* tol_opt =
      app.add_option("--tol", g.tol, "Residual acceptance tolerance");
  app.add_option("--seed", g.seed, "Simulation seed");
  app.add_option("--trials", g.trials, "Simulation trials");
  app.add_option("--format", g.format, "Output format (text|json|csv)")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "Print a contest's utility vector");
  std::string gamma_tau, gamma_contest;
  double gamma_reward = 1.0;
  int gamma_n = 2;
  gamma_cmd->add_option("--tullock", gamma_tau, "Tullock exponent (or inf)");
  gamma_cmd->add_option("--reward", gamma_reward, "Contest reward");
  gamma_cmd->add_option("--contest", gamma_contest, "Contest JSON");
  gamma_cmd->add_option("--n", gamma_n, "Max headcount")->required();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one strategy profile");
  std::string solve_profile;
  solve_cmd->add_option("--profile", solve_profile, "Contest index per designer")
      ->required();

  // equilibria
  auto* eq_cmd = app.add_subcommand("equilibria", "Enumerate designer equilibria");
  std::size_t cap = ccg::kProfileCap;
  eq_cmd->add_option("--cap", cap, "Profile enumeration cap");

  // dominance
  auto* dom_cmd = app.add_subcommand("dominance", "Check dominant contests");
  int dom_designer = 0, dom_contest = -1;
  std::size_t dom_cap = ccg::kProfileCap;
  dom_cmd->add_option("--designer", dom_designer, "Designer index")->required();
  dom_cmd->add_option("--contest", dom_contest, "Contest index (default: all)");
  dom_cmd->add_option("--cap", dom_cap, "Profile enumeration cap");

  // pareto
  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto-optimality check");
  std::string pareto_profile;
  std::size_t pareto_cap = ccg::kProfileCap;
  pareto_cmd->add_option("--profile", pareto_profile, "Profile")->required();
  pareto_cmd->add_option("--cap", pareto_cap, "Profile enumeration cap");

  // welfare
  auto* welfare_cmd = app.add_subcommand("welfare", "Welfare report for a profile");
  std::string welfare_profile;
  bool welfare_checks = false;
  std::size_t welfare_cap = ccg::kProfileCap;
  welfare_cmd->add_option("--profile", welfare_profile, "Profile")->required();
  welfare_cmd->add_flag("--check", welfare_checks,
                        "Also run welfare max/min verdicts");
  welfare_cmd->add_option("--cap", welfare_cap, "Profile enumeration cap");

  // risk
  auto* risk_cmd = app.add_subcommand("risk", "Risk-averse participation");
  std::string risk_profile_text;
  double scan_opponent = -1.0, grid_min = 0.0, grid_max = 2.0, grid_step = 1e-3;
  risk_cmd->add_option("--profile", risk_profile_text, "Profile (two designers)");
  risk_cmd->add_option("--scan-opponent-tau", scan_opponent,
                       "Scan best-response exponent against this opponent");
  risk_cmd->add_option("--grid-min", grid_min, "Scan grid lower end");
  risk_cmd->add_option("--grid-max", grid_max, "Scan grid upper end");
  risk_cmd->add_option("--grid-step", grid_step, "Scan grid step");

  // pure-ne
  auto* pure_cmd = app.add_subcommand("pure-ne", "Pure participation equilibria");
  std::string pure_profile, pure_assignment;
  std::size_t pure_cap = 1'000'000;
  pure_cmd->add_option("--profile", pure_profile, "Profile")->required();
  pure_cmd->add_option("--assignment", pure_assignment,
                       "Check one assignment (contest per contestant)");
  pure_cmd->add_option("--cap", pure_cap, "Assignment enumeration cap");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Simulation cross-check");
  std::string oracle_profile;
  oracle_cmd->add_option("--profile", oracle_profile, "Profile")->required();

  // reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "Re-run a bundled example");
  std::string repro_id;
  repro_cmd->add_option("id", repro_id, "Example id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }
  g.tol_set = tol_opt->count() > 0;

  try {
    if (gamma_cmd->parsed()) {
      return cmd_gamma(g, gamma_contest, gamma_reward, gamma_tau, gamma_n);
    }
    if (solve_cmd->parsed()) return cmd_solve(g, solve_profile);
    if (eq_cmd->parsed()) return cmd_equilibria(g, cap);
    if (dom_cmd->parsed()) {
      return cmd_dominance(g, dom_designer, dom_contest, dom_cap);
    }
    if (pareto_cmd->parsed()) return cmd_pareto(g, pareto_profile, pareto_cap);
    if (welfare_cmd->parsed()) {
      return cmd_welfare(g, welfare_profile, welfare_checks, welfare_cap);
    }
    if (risk_cmd->parsed()) {
      return cmd_risk(g, risk_profile_text, scan_opponent, grid_min, grid_max,
                      grid_step);
    }
    if (pure_cmd->parsed()) {
      return cmd_pure_ne(g, pure_profile, pure_assignment, pure_cap);
    }
    if (oracle_cmd->parsed()) return cmd_oracle(g, oracle_profile);
    if (repro_cmd->parsed()) return cmd_reproduce(g, repro_id);
  } catch (const ccg::UnsupportedModelError& e) {
    std::cerr << "unsupported model: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ccg::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
