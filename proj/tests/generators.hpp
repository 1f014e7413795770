#ifndef CCG_TESTS_GENERATORS_HPP
#define CCG_TESTS_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ccg/contest.hpp"
#include "ccg/designer_game.hpp"

namespace testgen {

// Random profile with monotonically decreasing utility: gamma(1) = R and
// gamma(k) <= min(gamma(k-1), R/k).
inline ccg::GammaProfile random_mdu_profile(std::mt19937_64& rng,
                                            double reward, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> g(static_cast<std::size_t>(n));
  g[0] = reward;
  double prev = reward;
  for (int k = 2; k <= n; ++k) {
    const double cap = std::min(prev, reward / k);
    const double v = cap * std::sqrt(unit(rng));
    g[static_cast<std::size_t>(k - 1)] = v;
    prev = v;
  }
  return ccg::GammaProfile(reward, std::move(g));
}

// Random profile with no monotonicity constraint.
inline ccg::GammaProfile random_profile(std::mt19937_64& rng, double reward,
                                        int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> g(static_cast<std::size_t>(n));
  g[0] = reward;
  for (int k = 2; k <= n; ++k) {
    g[static_cast<std::size_t>(k - 1)] = unit(rng) * reward / k;
  }
  return ccg::GammaProfile(reward, std::move(g));
}

// MDU profile pointwise >= base, with slack so the two differ clearly
// wherever the per-headcount cap R/k allows it.
inline ccg::GammaProfile mdu_profile_above(std::mt19937_64& rng,
                                           const ccg::GammaProfile& base) {
  std::uniform_real_distribution<double> slack_dist(0.05, 0.3);
  const int n = base.max_contestants();
  const double reward = base.reward();
  const double slack = slack_dist(rng) * reward;
  std::vector<double> g(static_cast<std::size_t>(n));
  g[0] = reward;
  for (int k = 2; k <= n; ++k) {
    const double bump = slack * (n - k + 2) / n;
    g[static_cast<std::size_t>(k - 1)] =
        std::min(reward / k, base.gamma(k) + bump);
  }
  for (int k = 3; k <= n; ++k) {  // keep it non-increasing after capping
    g[static_cast<std::size_t>(k - 1)] =
        std::min(g[static_cast<std::size_t>(k - 1)],
                 g[static_cast<std::size_t>(k - 2)]);
  }
  return ccg::GammaProfile(reward, std::move(g));
}

struct InstanceOptions {
  int min_designers = 2;
  int max_designers = 3;
  int min_contestants = 2;
  int max_contestants = 8;
  int max_set_size = 4;
  bool symmetric_rewards = false;
  // Give every set a pointwise-minimal member (plus sometimes an exact twin).
  bool ensure_mrd = true;
  double twin_probability = 0.0;
};

// All-MDU instance; when ensure_mrd is set, index 0 of each set is the
// pointwise-minimal member.
inline ccg::CcgInstance random_mdu_instance(std::mt19937_64& rng,
                                            const InstanceOptions& opts) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int m = opts.min_designers +
                static_cast<int>(rng() % static_cast<std::uint64_t>(
                                     opts.max_designers - opts.min_designers + 1));
  const int n = opts.min_contestants +
                static_cast<int>(rng() % static_cast<std::uint64_t>(
                                     opts.max_contestants - opts.min_contestants + 1));
  std::vector<double> rewards(static_cast<std::size_t>(m));
  const double shared = 0.5 + 2.0 * unit(rng);
  for (auto& r : rewards) {
    r = opts.symmetric_rewards ? shared : 0.5 + 2.0 * unit(rng);
  }
  std::vector<std::vector<ccg::GammaProfile>> sets(
      static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int size = 1 + static_cast<int>(
                             rng() % static_cast<std::uint64_t>(opts.max_set_size));
    auto& set = sets[static_cast<std::size_t>(i)];
    if (opts.ensure_mrd) {
      auto minimal = random_mdu_profile(rng, rewards[static_cast<std::size_t>(i)], n);
      set.push_back(minimal);
      if (opts.twin_probability > 0.0 && unit(rng) < opts.twin_probability) {
        set.push_back(minimal);
      }
      while (static_cast<int>(set.size()) < size) {
        set.push_back(mdu_profile_above(rng, minimal));
      }
    } else {
      for (int j = 0; j < size; ++j) {
        set.push_back(
            random_mdu_profile(rng, rewards[static_cast<std::size_t>(i)], n));
      }
    }
  }
  return ccg::CcgInstance(n, std::move(rewards), std::move(sets));
}

}  // namespace testgen

#endif  // CCG_TESTS_GENERATORS_HPP
