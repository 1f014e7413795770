#include "ccg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ccg/participation.hpp"

namespace ccg {

namespace {

inline std::uint64_t splitmix_step(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  // Counter-based keying: the stream depends only on (seed, trial), never on
  // how trials are partitioned across workers.
  state_ = (seed + 0x9E3779B97F4A7C15ull) ^
           (0xD1B54A32D192ED03ull * (trial + 1));
  splitmix_step(state_);
}

std::uint64_t TrialRng::next_u64() { return splitmix_step(state_); }

double TrialRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

McEstimate accumulate(double sum, double sum_sq, std::uint64_t trials) {
  McEstimate est;
  est.trials = trials;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * est.mean) / static_cast<double>(trials - 1));
    est.stderr_mean = std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

}  // namespace

McEstimate mc_contestant_utility(std::span<const GammaProfile> contests,
                                 std::span<const double> p, int n,
                                 std::size_t focal_contest,
                                 const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
  if (focal_contest >= contests.size()) {
    throw std::invalid_argument("focal contest out of range");
  }
  std::vector<double> cumulative(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cumulative[i] = acc;
  }
  const auto& focal = contests[focal_contest];

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    int joined = 0;
    for (int opponent = 0; opponent < n - 1; ++opponent) {
      const double u = rng.next_uniform() * acc;
      std::size_t pick = 0;
      while (pick + 1 < cumulative.size() && u >= cumulative[pick]) ++pick;
      if (pick == focal_contest) ++joined;
    }
    const double payoff = focal.gamma(joined + 1);
    sum += payoff;
    sum_sq += payoff * payoff;
  }
  return accumulate(sum, sum_sq, cfg.trials);
}

McEstimate mc_designer_utility(const GammaProfile& contest, double p_i, int n,
                               const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("need at least one trial");
  if (!(p_i >= 0.0 && p_i <= 1.0)) {
    throw std::invalid_argument("participation probability must be in [0, 1]");
  }
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    TrialRng rng(cfg.seed, t);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (rng.next_uniform() < p_i) ++k;
    }
    const double payoff =
        k >= 1 ? contest.reward() - static_cast<double>(k) * contest.gamma(k)
               : 0.0;
    sum += payoff;
    sum_sq += payoff * payoff;
  }
  return accumulate(sum, sum_sq, cfg.trials);
}

double max_profitable_deviation(std::span<const GammaProfile> contests,
                                std::span<const double> p, int n,
                                int grid_size) {
  if (contests.size() != p.size()) {
    throw std::invalid_argument("one probability per contest required");
  }
  std::vector<double> b(contests.size());
  for (std::size_t i = 0; i < contests.size(); ++i) {
    b[i] = beta(contests[i], p[i], n);
  }
  double current = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) current += p[i] * b[i];

  // Deviation value is linear in the deviator's own mixed vector, so the
  // vertex sweep is exact; pairwise mixtures on the grid are a redundancy
  // check.
  double best = -std::numeric_limits<double>::infinity();
  for (double v : b) best = std::max(best, v);
  if (grid_size > 0) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        for (int g = 0; g <= grid_size; ++g) {
          const double w = static_cast<double>(g) / grid_size;
          best = std::max(best, w * b[i] + (1.0 - w) * b[j]);
        }
      }
    }
  }
  return best - current;
}

bool brute_force_pure_ne_check(std::span<const GammaProfile> contests,
                               const PureAssignment& assignment) {
  const int m = static_cast<int>(contests.size());
  const int n = static_cast<int>(assignment.contest_of.size());
  // Move every contestant to every other contest, recount from scratch.
  for (int contestant = 0; contestant < n; ++contestant) {
    const int home = assignment.contest_of[static_cast<std::size_t>(contestant)];
    for (int target = 0; target < m; ++target) {
      if (target == home) continue;
      PureAssignment moved = assignment;
      moved.contest_of[static_cast<std::size_t>(contestant)] = target;
      const auto counts_before = assignment.headcounts(m);
      const auto counts_after = moved.headcounts(m);
      const double utility_before =
          contests[static_cast<std::size_t>(home)].gamma(
              counts_before[static_cast<std::size_t>(home)]);
      const double utility_after =
          contests[static_cast<std::size_t>(target)].gamma(
              counts_after[static_cast<std::size_t>(target)]);
      if (utility_after > utility_before + kGammaTol) return false;
    }
  }
  return true;
}

}  // namespace ccg
