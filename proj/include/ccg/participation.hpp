#ifndef CCG_PARTICIPATION_HPP
#define CCG_PARTICIPATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ccg/contest.hpp"

namespace ccg {

// Probabilities below this are snapped to zero and the vector renormalized;
// support membership uses the same threshold.
inline constexpr double kProbTol = 1e-9;

// Solver contract: reported equilibria violate the best-response condition by
// at most this much (in utility units).
inline constexpr double kResidualTol = 1e-9;

// Expected utility of a contestant who joins contest c while each of the
// other n-1 contestants joins independently with probability p:
//   beta(c, p) = E_{k ~ Bin(n-1, p)}[gamma(k + 1)].
double beta(const GammaProfile& c, double p, int n);

// Binomial coefficient by multiplicative running product; exact to 1e-12
// relative for n <= 50.
double binomial_coefficient(int n, int k);

// A symmetric participation equilibrium over m contests.
struct ParticipationEquilibrium {
  std::vector<double> probabilities;    // one entry per contest, sums to 1
  double common_utility = 0.0;          // u_c, the tied utility on the support
  std::vector<std::size_t> support;     // indices with probability > kProbTol
  double residual = 0.0;                // max best-response violation
};

// Max violation of the equilibrium condition at p: supported contests must
// tie in beta and weakly dominate every other contest.
double equilibrium_residual(std::span<const GammaProfile> contests,
                            std::span<const double> p, int n);

// Builds the equilibrium record for a probability vector: snaps entries below
// kProbTol to zero, renormalizes, and fills support/common utility/residual.
ParticipationEquilibrium make_equilibrium(std::span<const GammaProfile> contests,
                                          std::vector<double> p, int n);

// Unique symmetric equilibrium when every contest has monotonically
// decreasing utility. Water-filling: for a common utility level u, each
// p_i(u) is the root of beta_i(p) = u (0 if u >= R_i, 1 if u <= gamma_i(n));
// bisect on u until the probabilities sum to one.
// Throws std::invalid_argument on non-MDU input.
ParticipationEquilibrium solve_mdu_equilibrium(
    std::span<const GammaProfile> contests, int n);

// Interior closed form when every contest has full rent dissipation:
//   1 - p_i = (m-1) * R_i^{-1/(n-1)} / sum_j R_j^{-1/(n-1)}.
// Throws std::domain_error when the formula yields a negative probability
// (corner support; use the general MDU solver instead).
std::vector<double> frd_closed_form_probabilities(
    std::span<const double> rewards, int n);

// All symmetric equilibria for two contests, with no monotonicity assumption.
// Interior roots of beta(c1, p) = beta(c2, 1-p) are located by sign-change
// scan on a uniform grid refined by bisection to 1e-12; boundary equilibria
// p in {0, 1} are included when the lone supported contest weakly dominates.
// Result is sorted by ascending p_1. If the scan finds nothing the grid is
// widened before reporting a diagnostic failure.
std::vector<ParticipationEquilibrium> solve_two_contest(
    const GammaProfile& c1, const GammaProfile& c2, int n,
    int grid_points = 10000);

}  // namespace ccg

#endif  // CCG_PARTICIPATION_HPP
