#ifndef CCG_CONTEST_HPP
#define CCG_CONTEST_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace ccg {

// Absolute tolerance for pointwise comparisons of gamma values (gamma is
// O(reward), closed forms are exact but floating arithmetic is not).
inline constexpr double kGammaTol = 1e-12;

// A contest abstracted by its symmetric-equilibrium utility vector: gamma(k)
// is a contestant's expected utility when k contestants participate.
// Invariants: gamma(1) = reward and 0 <= gamma(k) <= reward / k.
class GammaProfile {
 public:
  GammaProfile(double reward, std::vector<double> gamma);

  double reward() const { return reward_; }

  // Largest headcount the profile covers.
  int max_contestants() const { return static_cast<int>(gamma_.size()); }

  // gamma(k), 1-based; k must be in [1, max_contestants()].
  double gamma(int k) const;

  // gamma(1..n_max) as a contiguous view.
  std::span<const double> gamma_values() const { return gamma_; }

  // Profile restricted to the first n headcounts. Throws if n exceeds
  // max_contestants(); profiles shorter than the game are rejected, longer
  // ones are truncated.
  GammaProfile truncated(int n) const;

  bool same_gamma(const GammaProfile& other, double tol = kGammaTol) const;

 private:
  double reward_;
  std::vector<double> gamma_;
};

// Tullock contest with success exponent tau in [0, +inf]; tau = +inf is the
// all-pay auction.
struct TullockSpec {
  double reward;
  double tau;
};

// Tullock contest whose exponent depends on the realized headcount.
struct PiecewiseTullockSpec {
  double reward;
  std::map<int, double> tau_by_headcount;
};

// Closed-form gamma for a Tullock contest:
//   gamma(k) = R * (1/k - (k-1)/k^2 * tau)  when k/(k-1) > tau, else 0,
// and gamma(1) = R always.
GammaProfile tullock_gamma(const TullockSpec& spec, int n);

// gamma(k) from the Tullock closed form at (reward, tau_k); every headcount
// 1..n must have an exponent entry.
GammaProfile piecewise_tullock_gamma(const PiecewiseTullockSpec& spec, int n);

// Monotonically decreasing utility: gamma(1) >= gamma(2) >= ... >= gamma(n).
bool is_mdu(const GammaProfile& c);

// gamma(1) = reward and gamma(k) = 0 for k >= 2.
bool is_full_rent_dissipation(const GammaProfile& c);

// Indices of the profiles that are pointwise minimal in gamma over the whole
// set (maximal rent dissipation). May be empty when no pointwise minimum
// exists. All profiles must share reward and length.
std::vector<std::size_t> mrd_subset(std::span<const GammaProfile> strategy_set);

// Expected sum of efforts with k participants: R - k * gamma(k).
double expected_total_effort(const GammaProfile& c, int k);

}  // namespace ccg

#endif  // CCG_CONTEST_HPP
