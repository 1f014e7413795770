#include "ccg/designer_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ccg/errors.hpp"

namespace ccg {

CcgInstance::CcgInstance(int num_contestants, std::vector<double> rewards,
                         std::vector<std::vector<GammaProfile>> strategy_sets)
    : num_contestants_(num_contestants),
      rewards_(std::move(rewards)),
      strategy_sets_(std::move(strategy_sets)) {
  if (rewards_.size() < 2) {
    throw std::invalid_argument("a competition needs at least two designers");
  }
  if (num_contestants_ < 1) {
    throw std::invalid_argument("need at least one contestant");
  }
  if (strategy_sets_.size() != rewards_.size()) {
    throw std::invalid_argument("one strategy set per designer required");
  }
  for (std::size_t i = 0; i < strategy_sets_.size(); ++i) {
    if (strategy_sets_[i].empty()) {
      throw std::invalid_argument("strategy set " + std::to_string(i) +
                                  " is empty");
    }
    const double tol = kGammaTol * std::max(1.0, rewards_[i]);
    for (auto& c : strategy_sets_[i]) {
      if (std::abs(c.reward() - rewards_[i]) > tol) {
        throw std::invalid_argument(
            "contest reward disagrees with designer " + std::to_string(i) +
            "'s reward");
      }
      // Profiles longer than the game are truncated; shorter ones rejected.
      if (c.max_contestants() != num_contestants_) {
        c = c.truncated(num_contestants_);
      }
    }
  }
}

std::size_t CcgInstance::profile_count() const {
  std::size_t count = 1;
  for (const auto& s : strategy_sets_) {
    count *= s.size();
  }
  return count;
}

double designer_utility(const GammaProfile& c, double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("participation probability must be in [0, 1]");
  }
  const double reach = c.reward() * (1.0 - std::pow(1.0 - p, n));
  return reach - static_cast<double>(n) * p * beta(c, p, n);
}

double designer_utility_binomial(const GammaProfile& c, double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("participation probability must be in [0, 1]");
  }
  double sum = 0.0;
  double coeff = static_cast<double>(n);  // C(n, k) for k = 1
  std::vector<double> q_pow(static_cast<std::size_t>(n) + 1);
  q_pow[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    q_pow[static_cast<std::size_t>(i)] =
        q_pow[static_cast<std::size_t>(i - 1)] * (1.0 - p);
  }
  double p_pow = p;
  for (int k = 1; k <= n; ++k) {
    sum += coeff * p_pow * q_pow[static_cast<std::size_t>(n - k)] *
           (c.reward() - static_cast<double>(k) * c.gamma(k));
    p_pow *= p;
    coeff *= static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return sum;
}

namespace {

std::vector<GammaProfile> chosen_contests(const CcgInstance& instance,
                                          const StrategyProfile& profile) {
  if (profile.choice.size() !=
      static_cast<std::size_t>(instance.num_designers())) {
    throw std::invalid_argument("profile length must match designer count");
  }
  std::vector<GammaProfile> contests;
  contests.reserve(profile.choice.size());
  for (int i = 0; i < instance.num_designers(); ++i) {
    const int idx = profile.choice[static_cast<std::size_t>(i)];
    if (idx < 0 ||
        idx >= static_cast<int>(instance.strategy_sets()[static_cast<std::size_t>(i)].size())) {
      throw std::invalid_argument("strategy index out of range for designer " +
                                  std::to_string(i));
    }
    contests.push_back(instance.contest(i, idx));
  }
  return contests;
}

ProfileOutcome outcome_from_equilibrium(const CcgInstance& instance,
                                        std::span<const GammaProfile> contests,
                                        ParticipationEquilibrium eq) {
  const int n = instance.num_contestants();
  ProfileOutcome out;
  out.designer_utilities.resize(contests.size());
  double w_d = 0.0;
  double w_c = 0.0;
  for (std::size_t i = 0; i < contests.size(); ++i) {
    const double p = eq.probabilities[i];
    out.designer_utilities[i] = designer_utility(contests[i], p, n);
    w_d += out.designer_utilities[i];
    w_c += static_cast<double>(n) * p * beta(contests[i], p, n);
  }
  out.contestant_utility = eq.common_utility;
  out.welfare.designers = w_d;
  out.welfare.contestants = w_c;
  double w_s = 0.0;
  for (std::size_t i = 0; i < contests.size(); ++i) {
    w_s += contests[i].reward() *
           (1.0 - std::pow(1.0 - eq.probabilities[i], n));
  }
  out.welfare.total = w_s;
  out.equilibrium = std::move(eq);
  return out;
}

}  // namespace

std::vector<ProfileOutcome> evaluate_profile(const CcgInstance& instance,
                                             const StrategyProfile& profile,
                                             SelectionRule rule) {
  const auto contests = chosen_contests(instance, profile);
  const int n = instance.num_contestants();

  const bool all_mdu =
      std::all_of(contests.begin(), contests.end(),
                  [](const GammaProfile& c) { return is_mdu(c); });

  std::vector<ParticipationEquilibrium> equilibria;
  if (all_mdu) {
    equilibria.push_back(solve_mdu_equilibrium(contests, n));
  } else if (contests.size() == 2) {
    equilibria = solve_two_contest(contests[0], contests[1], n);
  } else {
    throw UnsupportedModelError(
        "participation equilibria with three or more contests require all "
        "contests to have monotonically decreasing utility");
  }

  if (rule == SelectionRule::kHighestFirstProbability) {
    std::reverse(equilibria.begin(), equilibria.end());
  }

  std::vector<ProfileOutcome> outcomes;
  outcomes.reserve(equilibria.size());
  for (auto& eq : equilibria) {
    outcomes.push_back(outcome_from_equilibrium(instance, contests,
                                                std::move(eq)));
  }
  return outcomes;
}

ProfileEvaluator::ProfileEvaluator(const CcgInstance& instance,
                                   SelectionRule rule)
    : instance_(instance), rule_(rule) {
  cache_.resize(instance.profile_count());
}

std::size_t ProfileEvaluator::flat_index(const StrategyProfile& profile) const {
  std::size_t idx = 0;
  for (int i = 0; i < instance_.num_designers(); ++i) {
    idx = idx * instance_.strategy_sets()[static_cast<std::size_t>(i)].size() +
          static_cast<std::size_t>(profile.choice[static_cast<std::size_t>(i)]);
  }
  return idx;
}

const std::vector<ProfileOutcome>& ProfileEvaluator::outcomes(
    const StrategyProfile& profile) {
  auto& slot = cache_[flat_index(profile)];
  if (!slot.has_value()) {
    slot = evaluate_profile(instance_, profile, rule_);
  }
  return *slot;
}

double ProfileEvaluator::utility(const StrategyProfile& profile,
                                 int designer) {
  return outcomes(profile)[0]
      .designer_utilities[static_cast<std::size_t>(designer)];
}

namespace {

std::vector<int> best_responses_with(ProfileEvaluator& eval, int designer,
                                     const StrategyProfile& profile) {
  const auto& set =
      eval.instance().strategy_sets()[static_cast<std::size_t>(designer)];
  StrategyProfile candidate = profile;
  double best = -1.0;
  std::vector<double> utilities(set.size());
  for (std::size_t c = 0; c < set.size(); ++c) {
    candidate.choice[static_cast<std::size_t>(designer)] =
        static_cast<int>(c);
    utilities[c] = eval.utility(candidate, designer);
    best = std::max(best, utilities[c]);
  }
  std::vector<int> result;
  for (std::size_t c = 0; c < set.size(); ++c) {
    if (utilities[c] >= best - kUtilityTol) result.push_back(static_cast<int>(c));
  }
  return result;
}

// First profile in lexicographic order; advances in place.
bool next_profile(const CcgInstance& instance, StrategyProfile& profile) {
  for (int i = instance.num_designers() - 1; i >= 0; --i) {
    auto& v = profile.choice[static_cast<std::size_t>(i)];
    if (v + 1 <
        static_cast<int>(instance.strategy_sets()[static_cast<std::size_t>(i)].size())) {
      ++v;
      for (std::size_t j = static_cast<std::size_t>(i) + 1;
           j < profile.choice.size(); ++j) {
        profile.choice[j] = 0;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> best_responses(const CcgInstance& instance, int designer,
                                const StrategyProfile& profile,
                                SelectionRule rule) {
  ProfileEvaluator eval(instance, rule);
  return best_responses_with(eval, designer, profile);
}

namespace {

EquilibriumVerdict is_equilibrium_with(ProfileEvaluator& eval,
                                       const StrategyProfile& profile) {
  const CcgInstance& instance = eval.instance();
  EquilibriumVerdict verdict;
  verdict.holds = true;

  const auto& focal_outcomes = eval.outcomes(profile);
  // Best utility over the designer's alternatives (staying put is not a
  // deviation), evaluated under the selection rule.
  std::vector<double> best_deviation(
      static_cast<std::size_t>(instance.num_designers()),
      -std::numeric_limits<double>::infinity());
  std::vector<int> best_alternative(static_cast<std::size_t>(instance.num_designers()));
  for (int d = 0; d < instance.num_designers(); ++d) {
    StrategyProfile candidate = profile;
    const auto& set = instance.strategy_sets()[static_cast<std::size_t>(d)];
    for (std::size_t c = 0; c < set.size(); ++c) {
      if (static_cast<int>(c) == profile.choice[static_cast<std::size_t>(d)]) {
        continue;
      }
      candidate.choice[static_cast<std::size_t>(d)] = static_cast<int>(c);
      const double u = eval.utility(candidate, d);
      if (u > best_deviation[static_cast<std::size_t>(d)]) {
        best_deviation[static_cast<std::size_t>(d)] = u;
        best_alternative[static_cast<std::size_t>(d)] = static_cast<int>(c);
      }
    }
  }

  for (int d = 0; d < instance.num_designers(); ++d) {
    const double here =
        focal_outcomes[0].designer_utilities[static_cast<std::size_t>(d)];
    const double gain = best_deviation[static_cast<std::size_t>(d)] - here;
    if (gain > kUtilityTol) {
      verdict.holds = false;
      if (!verdict.witness) {
        verdict.witness = DeviationWitness{
            d, best_alternative[static_cast<std::size_t>(d)], gain};
      }
    }
  }

  // Audit the verdict under every contestant equilibrium of this profile.
  verdict.per_equilibrium.reserve(focal_outcomes.size());
  for (const auto& outcome : focal_outcomes) {
    bool ok = true;
    for (int d = 0; d < instance.num_designers() && ok; ++d) {
      const double here =
          outcome.designer_utilities[static_cast<std::size_t>(d)];
      if (best_deviation[static_cast<std::size_t>(d)] - here > kUtilityTol) {
        ok = false;
      }
    }
    verdict.per_equilibrium.push_back(ok);
  }
  return verdict;
}

void check_cap(std::size_t count, std::size_t cap) {
  if (count > cap) {
    throw CapExceededError("profile space of size " + std::to_string(count) +
                           " exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

EquilibriumVerdict is_equilibrium(const CcgInstance& instance,
                                  const StrategyProfile& profile,
                                  SelectionRule rule) {
  ProfileEvaluator eval(instance, rule);
  return is_equilibrium_with(eval, profile);
}

std::vector<StrategyProfile> enumerate_equilibria(const CcgInstance& instance,
                                                  SelectionRule rule,
                                                  std::size_t cap) {
  check_cap(instance.profile_count(), cap);
  ProfileEvaluator eval(instance, rule);
  std::vector<StrategyProfile> result;
  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  do {
    if (is_equilibrium_with(eval, profile).holds) {
      result.push_back(profile);
    }
  } while (next_profile(instance, profile));
  return result;
}

DominanceResult is_dominant(const CcgInstance& instance, int designer,
                            int contest_index, SelectionRule rule,
                            std::size_t cap) {
  check_cap(instance.profile_count(), cap);
  ProfileEvaluator eval(instance, rule);
  DominanceResult result;
  result.dominant = true;

  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  // Sweep all profiles; only those with the designer playing contest_index
  // matter, and every other designer combination appears among them.
  do {
    if (profile.choice[static_cast<std::size_t>(designer)] != contest_index) {
      continue;
    }
    const double here = eval.utility(profile, designer);
    StrategyProfile candidate = profile;
    const auto& set =
        instance.strategy_sets()[static_cast<std::size_t>(designer)];
    for (std::size_t c = 0; c < set.size(); ++c) {
      candidate.choice[static_cast<std::size_t>(designer)] =
          static_cast<int>(c);
      if (eval.utility(candidate, designer) > here + kUtilityTol) {
        result.dominant = false;
        result.witness_opponents = profile;
        result.better_alternative = static_cast<int>(c);
        return result;
      }
    }
  } while (next_profile(instance, profile));
  return result;
}

ParetoResult pareto_check(const CcgInstance& instance,
                          const StrategyProfile& profile, SelectionRule rule,
                          std::size_t cap) {
  check_cap(instance.profile_count(), cap);
  ProfileEvaluator eval(instance, rule);
  const auto& base = eval.outcomes(profile)[0].designer_utilities;

  ParetoResult result;
  result.pareto_optimal = true;
  StrategyProfile other{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  do {
    if (other == profile) continue;
    const auto& u = eval.outcomes(other)[0].designer_utilities;
    bool weakly_better = true;
    bool strictly_somewhere = false;
    for (std::size_t d = 0; d < u.size(); ++d) {
      if (u[d] < base[d] - kUtilityTol) {
        weakly_better = false;
        break;
      }
      if (u[d] > base[d] + kUtilityTol) strictly_somewhere = true;
    }
    if (weakly_better && strictly_somewhere) {
      result.pareto_optimal = false;
      result.improvement = other;
      return result;
    }
  } while (next_profile(instance, other));
  return result;
}

StrategyProfile mrd_mdu_profile(const CcgInstance& instance) {
  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), -1)};
  for (int i = 0; i < instance.num_designers(); ++i) {
    const auto& set = instance.strategy_sets()[static_cast<std::size_t>(i)];
    const auto mrd = mrd_subset(set);
    for (std::size_t idx : mrd) {
      if (is_mdu(set[idx])) {
        profile.choice[static_cast<std::size_t>(i)] = static_cast<int>(idx);
        break;
      }
    }
    if (profile.choice[static_cast<std::size_t>(i)] < 0) {
      throw std::invalid_argument(
          "strategy set " + std::to_string(i) +
          " has no maximal-rent-dissipation contest with monotonically "
          "decreasing utility");
    }
  }
  return profile;
}

MduCharacterization characterize_mdu_equilibria(const CcgInstance& instance,
                                                SelectionRule rule,
                                                std::size_t cap) {
  for (const auto& set : instance.strategy_sets()) {
    for (const auto& c : set) {
      if (!is_mdu(c)) {
        throw std::invalid_argument(
            "characterization requires every contest to have monotonically "
            "decreasing utility");
      }
    }
  }

  MduCharacterization report;
  report.mrd_profile = mrd_mdu_profile(instance);
  {
    std::vector<GammaProfile> contests;
    for (int i = 0; i < instance.num_designers(); ++i) {
      contests.push_back(instance.contest(
          i, report.mrd_profile.choice[static_cast<std::size_t>(i)]));
    }
    auto eq = solve_mdu_equilibrium(contests, instance.num_contestants());
    report.reference_probabilities = eq.probabilities;
    report.support = eq.support;
  }

  report.enumerated = enumerate_equilibria(instance, rule, cap);

  // Predicted set: MRD members on every supported contest; off-support picks
  // free. A singleton support {i0} instead pins gamma(n) of contest i0 to the
  // reference value.
  const int n = instance.num_contestants();
  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  std::vector<std::vector<bool>> allowed(
      static_cast<std::size_t>(instance.num_designers()));
  for (int i = 0; i < instance.num_designers(); ++i) {
    const auto& set = instance.strategy_sets()[static_cast<std::size_t>(i)];
    std::vector<bool> ok(set.size(), true);
    const bool supported =
        std::find(report.support.begin(), report.support.end(),
                  static_cast<std::size_t>(i)) != report.support.end();
    if (supported && report.support.size() >= 2) {
      const auto mrd = mrd_subset(set);
      ok.assign(set.size(), false);
      for (std::size_t idx : mrd) ok[idx] = true;
    } else if (supported && report.support.size() == 1) {
      const double ref = instance
                             .contest(i, report.mrd_profile.choice[static_cast<std::size_t>(i)])
                             .gamma(n);
      for (std::size_t c = 0; c < set.size(); ++c) {
        ok[c] = std::abs(set[c].gamma(n) - ref) <= kGammaTol;
      }
    }
    allowed[static_cast<std::size_t>(i)] = std::move(ok);
  }
  do {
    bool ok = true;
    for (int i = 0; i < instance.num_designers() && ok; ++i) {
      ok = allowed[static_cast<std::size_t>(i)]
                  [static_cast<std::size_t>(profile.choice[static_cast<std::size_t>(i)])];
    }
    if (ok) report.predicted.push_back(profile);
  } while (next_profile(instance, profile));

  report.matches = report.enumerated == report.predicted;

  // How far each enumerated equilibrium's participation vector strays from
  // the reference.
  ProfileEvaluator eval(instance, rule);
  double max_dev = 0.0;
  for (const auto& eq_profile : report.enumerated) {
    const auto& p = eval.outcomes(eq_profile)[0].equilibrium.probabilities;
    for (std::size_t i = 0; i < p.size(); ++i) {
      max_dev = std::max(max_dev,
                         std::abs(p[i] - report.reference_probabilities[i]));
    }
  }
  report.max_probability_deviation = max_dev;
  return report;
}

}  // namespace ccg
