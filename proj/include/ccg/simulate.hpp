#ifndef CCG_SIMULATE_HPP
#define CCG_SIMULATE_HPP

#include <cstdint>
#include <span>

#include "ccg/contest.hpp"
#include "ccg/pure_assignment.hpp"

namespace ccg {

// Monte-Carlo configuration. The random stream is counter-based, keyed by
// (seed, trial index), so serial and partitioned runs produce identical
// estimates.
struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
};

// Per-trial random stream derived from (seed, trial); stateless across
// trials.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t next_u64();
  double next_uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

struct McEstimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::uint64_t trials = 0;
};

// Simulates a contestant already in `focal_contest`: the other n-1
// contestants choose contests i.i.d. from p; the payoff is
// gamma_focal(k + 1) where k of them land on the focal contest.
McEstimate mc_contestant_utility(std::span<const GammaProfile> contests,
                                 std::span<const double> p, int n,
                                 std::size_t focal_contest,
                                 const SimConfig& cfg);

// Simulates a designer's utility: k ~ Bin(n, p_i) participants, payoff
// (R - k * gamma(k)) when k >= 1, else 0.
McEstimate mc_designer_utility(const GammaProfile& contest, double p_i, int n,
                               const SimConfig& cfg);

// Largest gain a single contestant can get by redirecting her own mixed
// participation vector, holding everyone else at p. The deviation value is
// linear in the deviator's vector, so vertices attain the maximum; mixtures
// on a grid of the given size are swept as well. Solver outputs stay below
// 1e-8.
double max_profitable_deviation(std::span<const GammaProfile> contests,
                                std::span<const double> p, int n,
                                int grid_size = 1000);

// Re-derives the pure-assignment Nash verdict from scratch: moves each
// contestant to each other contest, recounts headcounts and compares
// utilities directly.
bool brute_force_pure_ne_check(std::span<const GammaProfile> contests,
                               const PureAssignment& assignment);

}  // namespace ccg

#endif  // CCG_SIMULATE_HPP
