#ifndef CCG_RISK_HPP
#define CCG_RISK_HPP

#include <span>
#include <string>
#include <vector>

#include "ccg/contest.hpp"
#include "ccg/participation.hpp"

namespace ccg {

// Contestant utility transform a : [0,1] -> [0,1], strictly increasing with
// a(0) = 0 and a(1) = 1. Stored as polynomial coefficients (degree 0 first).
class RiskProfile {
 public:
  static RiskProfile identity();
  // a(x) = 1 - (1-x)^4
  static RiskProfile quartic_averse();
  // a(x) = sum_j coeffs[j] x^j; validated on a 1e-3 grid.
  static RiskProfile polynomial(std::vector<double> coeffs);

  double apply(double x) const;
  bool is_identity() const { return kind_ == Kind::kIdentity; }

  const std::string& name() const { return name_; }  // identity|quartic|poly
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  enum class Kind { kIdentity, kQuartic, kPolynomial };
  RiskProfile(Kind kind, std::string name, std::vector<double> coeffs);
  Kind kind_;
  std::string name_;
  std::vector<double> coeffs_;
};

// Participation utility of a risk-averse contestant:
//   E_{k ~ Bin(n-1, p)}[a(gamma(k+1))].
// The transform's domain is [0,1], so the contest reward must be 1.
double beta_averse(const GammaProfile& c, double p, int n,
                   const RiskProfile& risk);

// Symmetric equilibria of the two-contest participation game with transformed
// utilities; same scan + bisection as solve_two_contest but matching
// beta_averse values. Both rewards must be 1.
std::vector<ParticipationEquilibrium> solve_two_contest_risk_averse(
    const GammaProfile& c1, const GammaProfile& c2, int n,
    const RiskProfile& risk, int grid_points = 10000);

struct TauScanResult {
  std::vector<double> taus;
  std::vector<double> utilities;  // designer 1's utility per grid tau
  double best_tau = 0.0;
  double best_utility = 0.0;
};

// Designer 1's utility for each Tullock exponent on the grid against a fixed
// opponent exponent, with risk-averse contestants (reward 1 on both sides).
// Pure effort-stage equilibria exist for tau in [0, 2] and are unchanged by
// the transform, so gamma is reused and only participation utilities are
// transformed; the grid must stay inside [0, 2].
TauScanResult risk_averse_best_response_scan(std::span<const double> tau_grid,
                                             double opponent_tau, int n,
                                             const RiskProfile& risk);

// Uniform grid helper for the scan; step defaults to 1e-3.
std::vector<double> uniform_tau_grid(double lo = 0.0, double hi = 2.0,
                                     double step = 1e-3);

}  // namespace ccg

#endif  // CCG_RISK_HPP
