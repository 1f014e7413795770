#include "ccg/participation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ccg {

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

double beta(const GammaProfile& c, double p, int n) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("participation probability must be in [0, 1]");
  }
  if (n < 1 || n > c.max_contestants()) {
    throw std::invalid_argument("headcount bound outside the profile range");
  }
  const auto gamma = c.gamma_values();
  // All terms are non-negative: no cancellation, plain accumulation is fine.
  const int d = n - 1;
  double sum = 0.0;
  double coeff = 1.0;  // C(n-1, k), updated multiplicatively
  // p^k forward, (1-p)^{n-1-k} backward.
  std::vector<double> q_pow(static_cast<std::size_t>(d) + 1);
  q_pow[0] = 1.0;
  const double q = 1.0 - p;
  for (int i = 1; i <= d; ++i) q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)] * q;
  double p_pow = 1.0;
  for (int k = 0; k <= d; ++k) {
    sum += coeff * p_pow * q_pow[static_cast<std::size_t>(d - k)] *
           gamma[static_cast<std::size_t>(k)];
    p_pow *= p;
    coeff *= static_cast<double>(d - k) / static_cast<double>(k + 1);
  }
  return sum;
}

double equilibrium_residual(std::span<const GammaProfile> contests,
                            std::span<const double> p, int n) {
  const std::size_t m = contests.size();
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = beta(contests[i], p[i], n);

  double dominate_gap = 0.0;  // supported must weakly dominate everyone
  double tie_gap = 0.0;       // supported must tie each other
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] <= kProbTol) continue;
    for (std::size_t j = 0; j < m; ++j) {
      dominate_gap = std::max(dominate_gap, b[j] - b[i]);
      if (p[j] > kProbTol) tie_gap = std::max(tie_gap, std::abs(b[i] - b[j]));
    }
  }
  return std::max(0.0, dominate_gap) + tie_gap;
}

ParticipationEquilibrium make_equilibrium(
    std::span<const GammaProfile> contests, std::vector<double> p, int n) {
  for (double& v : p) {
    if (v < kProbTol) v = 0.0;
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total <= 0.0) {
    throw std::invalid_argument("participation vector sums to zero");
  }
  for (double& v : p) v /= total;

  ParticipationEquilibrium eq;
  eq.probabilities = std::move(p);
  double u_c = 0.0;
  for (std::size_t i = 0; i < contests.size(); ++i) {
    if (eq.probabilities[i] > 0.0) {
      eq.support.push_back(i);
      u_c += eq.probabilities[i] * beta(contests[i], eq.probabilities[i], n);
    }
  }
  eq.common_utility = u_c;
  eq.residual = equilibrium_residual(contests, eq.probabilities, n);
  return eq;
}

namespace {

// Root of beta_i(p) = u in [0, 1]; beta_i is strictly decreasing for MDU
// profiles, from R_i at p = 0 down to gamma_i(n) at p = 1.
double participation_at_level(const GammaProfile& c, double u, int n) {
  if (u >= c.reward()) return 0.0;
  if (u <= c.gamma(n)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (beta(c, mid, n) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ParticipationEquilibrium solve_mdu_equilibrium(
    std::span<const GammaProfile> contests, int n) {
  if (contests.empty()) {
    throw std::invalid_argument("need at least one contest");
  }
  for (const auto& c : contests) {
    if (!is_mdu(c)) {
      throw std::invalid_argument(
          "water-filling needs monotonically decreasing utility; "
          "use the general two-contest solver");
    }
  }
  const std::size_t m = contests.size();
  std::vector<double> p(m, 0.0);
  if (m == 1) {
    p[0] = 1.0;
    return make_equilibrium(contests, std::move(p), n);
  }
  if (n == 1) {
    // A lone contestant just picks the best reward; ties split evenly.
    double best = 0.0;
    for (const auto& c : contests) best = std::max(best, c.reward());
    std::size_t ties = 0;
    for (const auto& c : contests) {
      if (c.reward() >= best - kGammaTol) ++ties;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (contests[i].reward() >= best - kGammaTol) {
        p[i] = 1.0 / static_cast<double>(ties);
      }
    }
    return make_equilibrium(contests, std::move(p), n);
  }

  double u_hi = 0.0;
  for (const auto& c : contests) u_hi = std::max(u_hi, c.reward());
  double u_lo = 0.0;
  // Total participation is non-increasing in the utility level: m at u = 0,
  // 0 at u = max reward. 200-iteration cap with early exit on a collapsed
  // bracket.
  const auto total_at = [&](double u) {
    double s = 0.0;
    for (const auto& c : contests) s += participation_at_level(c, u, n);
    return s;
  };
  for (int iter = 0; iter < 200 && u_hi - u_lo > 1e-16 * std::max(1.0, u_hi);
       ++iter) {
    const double mid = 0.5 * (u_lo + u_hi);
    if (total_at(mid) >= 1.0) {
      u_lo = mid;
    } else {
      u_hi = mid;
    }
  }
  const double u_star = 0.5 * (u_lo + u_hi);
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = participation_at_level(contests[i], u_star, n);
  }
  return make_equilibrium(contests, std::move(p), n);
}

std::vector<double> frd_closed_form_probabilities(
    std::span<const double> rewards, int n) {
  if (n < 2) {
    throw std::invalid_argument("closed form needs at least two contestants");
  }
  if (rewards.empty()) {
    throw std::invalid_argument("need at least one reward");
  }
  const double expo = -1.0 / (static_cast<double>(n) - 1.0);
  double denom = 0.0;
  for (double r : rewards) {
    if (!(r > 0.0)) throw std::invalid_argument("rewards must be positive");
    denom += std::pow(r, expo);
  }
  const double m = static_cast<double>(rewards.size());
  std::vector<double> p(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    p[i] = 1.0 - (m - 1.0) * std::pow(rewards[i], expo) / denom;
    if (p[i] < -kProbTol) {
      throw std::domain_error(
          "closed form yields a negative probability: the support is a "
          "proper subset, use the general MDU solver");
    }
    p[i] = std::max(p[i], 0.0);
  }
  return p;
}

namespace {

// Adds eq for probability vector (p1, 1-p1) if not already present.
void push_two_contest_root(std::vector<double>& roots, double p1) {
  for (double r : roots) {
    if (std::abs(r - p1) < 1e-10) return;
  }
  roots.push_back(p1);
}

}  // namespace

std::vector<ParticipationEquilibrium> solve_two_contest(
    const GammaProfile& c1, const GammaProfile& c2, int n, int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("grid needs at least two points");
  }
  std::vector<GammaProfile> contests{c1, c2};
  if (n == 1) {
    // Degenerate game: beta is constant in p, so the contestant simply
    // prefers the larger reward; equal rewards tie everywhere and the even
    // split is reported as the canonical interior equilibrium.
    std::vector<ParticipationEquilibrium> result;
    if (c2.reward() >= c1.reward() - kGammaTol) {
      result.push_back(make_equilibrium(contests, {0.0, 1.0}, n));
    }
    if (std::abs(c1.reward() - c2.reward()) <= kGammaTol) {
      result.push_back(make_equilibrium(contests, {0.5, 0.5}, n));
    }
    if (c1.reward() >= c2.reward() - kGammaTol) {
      result.push_back(make_equilibrium(contests, {1.0, 0.0}, n));
    }
    return result;
  }

  const auto gap = [&](double p1) {
    return beta(c1, p1, n) - beta(c2, 1.0 - p1, n);
  };

  std::vector<double> roots;
  for (int pass = 0; pass < 3 && roots.empty(); ++pass) {
    const int grid = grid_points * (pass == 0 ? 1 : (pass == 1 ? 10 : 100));
    double prev = gap(0.0);
    if (prev == 0.0) push_two_contest_root(roots, 0.0);
    for (int i = 1; i <= grid; ++i) {
      const double x = static_cast<double>(i) / grid;
      const double cur = gap(x);
      if (cur == 0.0) {
        push_two_contest_root(roots, x);
      } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
        double lo = static_cast<double>(i - 1) / grid;
        double hi = x;
        double f_lo = gap(lo);
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          const double f_mid = gap(mid);
          if (f_mid == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((f_lo < 0.0) != (f_mid < 0.0)) {
            hi = mid;
          } else {
            lo = mid;
            f_lo = f_mid;
          }
        }
        push_two_contest_root(roots, 0.5 * (lo + hi));
      }
      prev = cur;
    }
    // Boundary equilibria: the lone supported contest must weakly dominate.
    if (c2.gamma(n) >= c1.reward() - kResidualTol) {
      push_two_contest_root(roots, 0.0);
    }
    if (c1.gamma(n) >= c2.reward() - kResidualTol) {
      push_two_contest_root(roots, 1.0);
    }
  }
  if (roots.empty()) {
    // A symmetric equilibrium of the finite participation game always
    // exists, so an empty scan is a numerical failure worth surfacing.
    throw std::runtime_error(
        "two-contest scan found no equilibrium after grid widening");
  }
  std::sort(roots.begin(), roots.end());

  std::vector<ParticipationEquilibrium> result;
  result.reserve(roots.size());
  for (double p1 : roots) {
    result.push_back(make_equilibrium(contests, {p1, 1.0 - p1}, n));
  }
  return result;
}

}  // namespace ccg
