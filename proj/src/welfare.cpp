#include "ccg/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccg/errors.hpp"

namespace ccg {

WelfareReport welfare_of(const CcgInstance& instance,
                         const StrategyProfile& profile, SelectionRule rule) {
  const auto outcomes = evaluate_profile(instance, profile, rule);
  const auto& out = outcomes[0];
  const int n = instance.num_contestants();

  WelfareReport report;
  report.designers = out.welfare.designers;
  report.contestants = out.welfare.contestants;
  report.total = out.welfare.total;
  report.holder_bound = holder_bound(instance.rewards(), n);
  report.per_contest_reach.resize(instance.rewards().size());
  for (std::size_t i = 0; i < instance.rewards().size(); ++i) {
    report.per_contest_reach[i] =
        instance.rewards()[i] *
        (1.0 - std::pow(1.0 - out.equilibrium.probabilities[i], n));
  }
  return report;
}

double holder_bound(std::span<const double> rewards, int n) {
  if (rewards.empty()) {
    throw std::invalid_argument("need at least one reward");
  }
  for (double r : rewards) {
    if (!(r > 0.0)) throw std::invalid_argument("rewards must be positive");
  }
  double total = 0.0;
  for (double r : rewards) total += r;
  if (n == 1) {
    // One contestant reaches exactly one contest; the exponent 1/(n-1)
    // degenerates, so return the exact maximum instead.
    return *std::max_element(rewards.begin(), rewards.end());
  }
  if (n < 1) {
    throw std::invalid_argument("need at least one contestant");
  }
  const double m = static_cast<double>(rewards.size());
  double denom = 0.0;
  for (double r : rewards) denom += std::pow(r, -1.0 / (n - 1.0));
  return total - std::pow(m - 1.0, n) / std::pow(denom, n - 1.0);
}

std::string welfare_case_name(WelfareCase c) {
  switch (c) {
    case WelfareCase::kFullRentDissipationAvailable:
      return "full-rent-dissipation-available";
    case WelfareCase::kSymmetric:
      return "symmetric";
    case WelfareCase::kMrdSymmetric:
      return "mrd-symmetric";
    case WelfareCase::kNone:
      return "none";
  }
  return "none";
}

namespace {

bool equal_rewards(const CcgInstance& instance) {
  const auto& r = instance.rewards();
  for (double v : r) {
    if (std::abs(v - r.front()) > kGammaTol * std::max(1.0, r.front())) {
      return false;
    }
  }
  return true;
}

bool same_strategy_sets(const CcgInstance& instance) {
  const auto& sets = instance.strategy_sets();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].size() != sets[0].size()) return false;
    // Order-insensitive match of gamma vectors.
    std::vector<bool> used(sets[0].size(), false);
    for (const auto& c : sets[i]) {
      bool found = false;
      for (std::size_t j = 0; j < sets[0].size(); ++j) {
        if (!used[j] && c.same_gamma(sets[0][j])) {
          used[j] = true;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

bool mrd_gamma_symmetric(const CcgInstance& instance) {
  if (!equal_rewards(instance)) return false;
  const GammaProfile* reference = nullptr;
  for (const auto& set : instance.strategy_sets()) {
    const auto mrd = mrd_subset(set);
    if (mrd.empty()) return false;
    const GammaProfile& pick = set[mrd.front()];
    if (reference == nullptr) {
      reference = &pick;
    } else if (!reference->same_gamma(pick)) {
      return false;
    }
  }
  return true;
}

std::vector<WelfareCase> detect_cases(const CcgInstance& instance) {
  std::vector<WelfareCase> cases;
  bool frd_everywhere = true;
  for (const auto& set : instance.strategy_sets()) {
    if (!std::any_of(set.begin(), set.end(), is_full_rent_dissipation)) {
      frd_everywhere = false;
      break;
    }
  }
  if (frd_everywhere) {
    cases.push_back(WelfareCase::kFullRentDissipationAvailable);
  }
  if (equal_rewards(instance) && same_strategy_sets(instance)) {
    cases.push_back(WelfareCase::kSymmetric);
  }
  if (mrd_gamma_symmetric(instance)) {
    cases.push_back(WelfareCase::kMrdSymmetric);
  }
  return cases;
}

bool advance(const CcgInstance& instance, StrategyProfile& profile) {
  for (int i = instance.num_designers() - 1; i >= 0; --i) {
    auto& v = profile.choice[static_cast<std::size_t>(i)];
    if (v + 1 < static_cast<int>(
                    instance.strategy_sets()[static_cast<std::size_t>(i)].size())) {
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

void check_cap(const CcgInstance& instance, std::size_t cap) {
  if (instance.profile_count() > cap) {
    throw CapExceededError("profile space exceeds the enumeration cap");
  }
}

}  // namespace

TotalWelfareVerdict check_ws_maximality(const CcgInstance& instance,
                                        SelectionRule rule, std::size_t cap) {
  check_cap(instance, cap);
  TotalWelfareVerdict verdict;
  verdict.all_cases = detect_cases(instance);
  verdict.first_case =
      verdict.all_cases.empty() ? WelfareCase::kNone : verdict.all_cases.front();

  verdict.mrd_profile = mrd_mdu_profile(instance);
  ProfileEvaluator eval(instance, rule);
  verdict.mrd_total = eval.outcomes(verdict.mrd_profile)[0].welfare.total;

  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  verdict.argmax_profile = profile;
  verdict.max_total = -1.0;
  do {
    const double ws = eval.outcomes(profile)[0].welfare.total;
    if (ws > verdict.max_total) {
      verdict.max_total = ws;
      verdict.argmax_profile = profile;
    }
  } while (advance(instance, profile));

  verdict.holds = verdict.mrd_total >= verdict.max_total - 1e-9;
  return verdict;
}

ContestantWelfareVerdict check_wc_minimality(const CcgInstance& instance,
                                             SelectionRule rule,
                                             std::size_t cap) {
  check_cap(instance, cap);
  ContestantWelfareVerdict verdict;
  verdict.mrd_profile = mrd_mdu_profile(instance);
  ProfileEvaluator eval(instance, rule);
  verdict.mrd_contestants =
      eval.outcomes(verdict.mrd_profile)[0].welfare.contestants;

  StrategyProfile profile{std::vector<int>(
      static_cast<std::size_t>(instance.num_designers()), 0)};
  verdict.worst_profile = profile;
  double worst = std::numeric_limits<double>::infinity();
  do {
    const double wc = eval.outcomes(profile)[0].welfare.contestants;
    if (wc - verdict.mrd_contestants < worst) {
      worst = wc - verdict.mrd_contestants;
      verdict.worst_profile = profile;
    }
  } while (advance(instance, profile));

  verdict.worst_margin = worst;
  verdict.holds = worst >= -1e-9;
  return verdict;
}

}  // namespace ccg
