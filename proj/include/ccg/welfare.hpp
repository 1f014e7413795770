#ifndef CCG_WELFARE_HPP
#define CCG_WELFARE_HPP

#include <span>
#include <string>
#include <vector>

#include "ccg/designer_game.hpp"

namespace ccg {

struct WelfareReport {
  double designers = 0.0;    // W_D = sum of designer utilities
  double contestants = 0.0;  // W_C = n * sum_i p_i beta_i
  double total = 0.0;        // W_S = sum_i R_i [1 - (1-p_i)^n]
  double holder_bound = 0.0;
  std::vector<double> per_contest_reach;  // R_i [1 - (1-p_i)^n]
};

// Welfare of the selected outcome of a profile. W_D + W_C = W_S within 1e-9
// and W_S never exceeds the Holder bound.
WelfareReport welfare_of(const CcgInstance& instance,
                         const StrategyProfile& profile,
                         SelectionRule rule =
                             SelectionRule::kLowestFirstProbability);

// Upper bound on total welfare over all profiles, via Holder's inequality:
//   sum_i R_i  -  (m-1)^n / (sum_i R_i^{-1/(n-1)})^{n-1}.
// For n = 1 the exponent degenerates; the exact maximum max_i R_i is
// returned instead (a single contestant reaches one contest).
double holder_bound(std::span<const double> rewards, int n);

// Conditions under which the all-MRD profile is known to maximize total
// welfare. Checked in order; overlapping matches are all reported.
enum class WelfareCase {
  kFullRentDissipationAvailable,  // every set contains a FRD contest
  kSymmetric,                     // equal rewards, identical strategy sets
  kMrdSymmetric,                  // equal rewards, identical MRD gamma vector
  kNone,
};

std::string welfare_case_name(WelfareCase c);

struct TotalWelfareVerdict {
  WelfareCase first_case = WelfareCase::kNone;
  std::vector<WelfareCase> all_cases;
  bool holds = false;              // MRD profile attains the enumerated max
  StrategyProfile mrd_profile;
  double mrd_total = 0.0;
  StrategyProfile argmax_profile;  // enumerated W_S maximizer
  double max_total = 0.0;
};

// Detects which welfare case applies and whether the all-MRD profile attains
// the maximum total welfare over all enumerable profiles.
TotalWelfareVerdict check_ws_maximality(
    const CcgInstance& instance,
    SelectionRule rule = SelectionRule::kLowestFirstProbability,
    std::size_t cap = kProfileCap);

struct ContestantWelfareVerdict {
  bool holds = false;        // W_C(MRD profile) <= W_C(every profile)
  double worst_margin = 0.0; // min over profiles of W_C(profile) - W_C(MRD)
  StrategyProfile mrd_profile;
  double mrd_contestants = 0.0;
  StrategyProfile worst_profile;
};

// The all-MRD profile minimizes contestant welfare over every enumerable
// profile; worst_margin must be >= -1e-9.
ContestantWelfareVerdict check_wc_minimality(
    const CcgInstance& instance,
    SelectionRule rule = SelectionRule::kLowestFirstProbability,
    std::size_t cap = kProfileCap);

}  // namespace ccg

#endif  // CCG_WELFARE_HPP
