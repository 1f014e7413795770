#ifndef CCG_DESIGNER_GAME_HPP
#define CCG_DESIGNER_GAME_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ccg/contest.hpp"
#include "ccg/participation.hpp"

namespace ccg {

// Tolerance for designer-utility comparisons (utilities live in
// [0, max R_i]); ties keep every argmax member.
inline constexpr double kUtilityTol = 1e-9;

// Default cap on exhaustively enumerated strategy profiles.
inline constexpr std::size_t kProfileCap = 1'000'000;

// When a contestant game has several symmetric equilibria, the rule picking
// the one that drives scalar designer utilities. Every equilibrium-dependent
// verdict is also reported per equilibrium.
enum class SelectionRule {
  kLowestFirstProbability,   // default: smallest p_1 first
  kHighestFirstProbability,
};

// A contest competition game over finite strategy menus: m designers with
// rewards R_i each pick one contest from their own set; n contestants then
// play their symmetric participation equilibrium.
class CcgInstance {
 public:
  CcgInstance(int num_contestants, std::vector<double> rewards,
              std::vector<std::vector<GammaProfile>> strategy_sets);

  int num_designers() const { return static_cast<int>(rewards_.size()); }
  int num_contestants() const { return num_contestants_; }
  const std::vector<double>& rewards() const { return rewards_; }
  const std::vector<std::vector<GammaProfile>>& strategy_sets() const {
    return strategy_sets_;
  }
  const GammaProfile& contest(int designer, int index) const {
    return strategy_sets_[designer][index];
  }

  // Number of full strategy profiles (product of set sizes).
  std::size_t profile_count() const;

 private:
  int num_contestants_;
  std::vector<double> rewards_;
  std::vector<std::vector<GammaProfile>> strategy_sets_;
};

// One contest index per designer.
struct StrategyProfile {
  std::vector<int> choice;

  bool operator==(const StrategyProfile&) const = default;
};

struct Welfare {
  double designers = 0.0;    // W_D
  double contestants = 0.0;  // W_C
  double total = 0.0;        // W_S
};

// Everything induced by one strategy profile under one contestant
// equilibrium.
struct ProfileOutcome {
  ParticipationEquilibrium equilibrium;
  std::vector<double> designer_utilities;
  double contestant_utility = 0.0;  // u_c
  Welfare welfare;
};

// Designer's expected utility given per-contestant participation probability
// p: R * [1 - (1-p)^n] - n * p * beta(c, p).
double designer_utility(const GammaProfile& c, double p, int n);

// Same quantity as the direct binomial expectation
// E_{k ~ Bin(n,p)}[(R - k*gamma(k)) * 1{k >= 1}]; the two agree to 1e-12.
double designer_utility_binomial(const GammaProfile& c, double p, int n);

// All outcomes of a profile, one per contestant equilibrium, ordered by the
// selection rule (element 0 is the selected one). All-MDU instances have
// exactly one outcome; otherwise only m = 2 is supported
// (throws UnsupportedModelError for larger non-MDU games).
std::vector<ProfileOutcome> evaluate_profile(
    const CcgInstance& instance, const StrategyProfile& profile,
    SelectionRule rule = SelectionRule::kLowestFirstProbability);

// Memoizing evaluator used by the exhaustive searches. Utilities are those of
// the selected contestant equilibrium.
class ProfileEvaluator {
 public:
  ProfileEvaluator(const CcgInstance& instance, SelectionRule rule);
  const std::vector<ProfileOutcome>& outcomes(const StrategyProfile& profile);
  double utility(const StrategyProfile& profile, int designer);
  const CcgInstance& instance() const { return instance_; }
  SelectionRule rule() const { return rule_; }

 private:
  const CcgInstance& instance_;
  SelectionRule rule_;
  std::vector<std::optional<std::vector<ProfileOutcome>>> cache_;
  std::size_t flat_index(const StrategyProfile& profile) const;
};

// Indices of designer's utility-maximizing contests against the opponents
// fixed by `profile` (the designer's own entry is ignored). Ties within
// kUtilityTol keep all argmax members.
std::vector<int> best_responses(const CcgInstance& instance, int designer,
                                const StrategyProfile& profile,
                                SelectionRule rule =
                                    SelectionRule::kLowestFirstProbability);

struct DeviationWitness {
  int designer = 0;
  int alternative = 0;
  double utility_gain = 0.0;
};

struct EquilibriumVerdict {
  bool holds = false;
  std::optional<DeviationWitness> witness;  // a profitable deviation if !holds
  // Verdict recomputed with the profile's payoffs taken from each of its
  // contestant equilibria in turn (deviations keep the selection rule).
  std::vector<bool> per_equilibrium;
};

// True iff every designer's choice is a best response to the others.
EquilibriumVerdict is_equilibrium(const CcgInstance& instance,
                                  const StrategyProfile& profile,
                                  SelectionRule rule =
                                      SelectionRule::kLowestFirstProbability);

// All strategy profiles passing is_equilibrium, in lexicographic order.
// Throws CapExceededError when the product of set sizes exceeds `cap`.
std::vector<StrategyProfile> enumerate_equilibria(
    const CcgInstance& instance,
    SelectionRule rule = SelectionRule::kLowestFirstProbability,
    std::size_t cap = kProfileCap);

struct DominanceResult {
  bool dominant = false;
  // When not dominant: an opponent profile and a strictly better alternative.
  std::optional<StrategyProfile> witness_opponents;
  std::optional<int> better_alternative;
};

// Whether strategy_sets[designer][contest_index] is weakly best against every
// combination of opponent choices.
DominanceResult is_dominant(const CcgInstance& instance, int designer,
                            int contest_index,
                            SelectionRule rule =
                                SelectionRule::kLowestFirstProbability,
                            std::size_t cap = kProfileCap);

struct ParetoResult {
  bool pareto_optimal = false;
  std::optional<StrategyProfile> improvement;  // weak improvement, strict somewhere
};

ParetoResult pareto_check(const CcgInstance& instance,
                          const StrategyProfile& profile,
                          SelectionRule rule =
                              SelectionRule::kLowestFirstProbability,
                          std::size_t cap = kProfileCap);

// For an all-MDU instance whose sets each contain a pointwise-minimal (MRD)
// member: the reference profile of MRD picks, the participation vector and
// support it induces, and how far every enumerated designer equilibrium's
// participation vector strays from it. On such instances all equilibria
// induce the same vector, so max_probability_deviation should be <= 1e-8.
// `predicted` is the support-based characterization (all MRD picks on the
// support; when the support is a single contest i0, any contest matching the
// reference gamma at n); `matches` records set equality with `enumerated`.
struct MduCharacterization {
  StrategyProfile mrd_profile;
  std::vector<double> reference_probabilities;
  std::vector<std::size_t> support;
  std::vector<StrategyProfile> enumerated;
  std::vector<StrategyProfile> predicted;
  bool matches = false;
  double max_probability_deviation = 0.0;
};

MduCharacterization characterize_mdu_equilibria(
    const CcgInstance& instance,
    SelectionRule rule = SelectionRule::kLowestFirstProbability,
    std::size_t cap = kProfileCap);

// A profile of per-set MRD members that also have monotonically decreasing
// utility. Throws std::invalid_argument when some set has none.
StrategyProfile mrd_mdu_profile(const CcgInstance& instance);

}  // namespace ccg

#endif  // CCG_DESIGNER_GAME_HPP
