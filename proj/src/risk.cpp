#include "ccg/risk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccg {

namespace {

double poly_eval(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    v = v * x + *it;
  }
  return v;
}

void validate_transform(const RiskProfile& a) {
  if (std::abs(a.apply(0.0)) > 1e-12 || std::abs(a.apply(1.0) - 1.0) > 1e-12) {
    throw std::invalid_argument("transform must satisfy a(0) = 0 and a(1) = 1");
  }
  double prev = a.apply(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double cur = a.apply(i / 1000.0);
    if (cur <= prev) {
      throw std::invalid_argument(
          "transform must be strictly increasing on [0, 1]");
    }
    prev = cur;
  }
}

}  // namespace

RiskProfile::RiskProfile(Kind kind, std::string name,
                         std::vector<double> coeffs)
    : kind_(kind), name_(std::move(name)), coeffs_(std::move(coeffs)) {}

RiskProfile RiskProfile::identity() {
  return RiskProfile(Kind::kIdentity, "identity", {0.0, 1.0});
}

RiskProfile RiskProfile::quartic_averse() {
  // 1 - (1-x)^4 = 4x - 6x^2 + 4x^3 - x^4
  return RiskProfile(Kind::kQuartic, "quartic", {0.0, 4.0, -6.0, 4.0, -1.0});
}

RiskProfile RiskProfile::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("polynomial transform needs coefficients");
  }
  RiskProfile profile(Kind::kPolynomial, "poly", std::move(coeffs));
  validate_transform(profile);
  return profile;
}

double RiskProfile::apply(double x) const {
  switch (kind_) {
    case Kind::kIdentity:
      return x;
    case Kind::kQuartic: {
      const double y = 1.0 - x;
      const double y2 = y * y;
      return 1.0 - y2 * y2;
    }
    case Kind::kPolynomial:
      return poly_eval(coeffs_, x);
  }
  return x;
}

namespace {

void require_unit_reward(const GammaProfile& c) {
  if (std::abs(c.reward() - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "risk transforms are defined on [0, 1]: rescale the contest to "
        "reward 1 (or supply a rescaled transform)");
  }
}

}  // namespace

double beta_averse(const GammaProfile& c, double p, int n,
                   const RiskProfile& risk) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("participation probability must be in [0, 1]");
  }
  if (n < 1 || n > c.max_contestants()) {
    throw std::invalid_argument("headcount bound outside the profile range");
  }
  if (!risk.is_identity()) require_unit_reward(c);

  const auto gamma = c.gamma_values();
  const int d = n - 1;
  std::vector<double> q_pow(static_cast<std::size_t>(d) + 1);
  q_pow[0] = 1.0;
  const double q = 1.0 - p;
  for (int i = 1; i <= d; ++i) {
    q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)] * q;
  }
  double sum = 0.0;
  double coeff = 1.0;
  double p_pow = 1.0;
  for (int k = 0; k <= d; ++k) {
    sum += coeff * p_pow * q_pow[static_cast<std::size_t>(d - k)] *
           risk.apply(gamma[static_cast<std::size_t>(k)]);
    p_pow *= p;
    coeff *= static_cast<double>(d - k) / static_cast<double>(k + 1);
  }
  return sum;
}

namespace {

double residual_averse(std::span<const GammaProfile> contests,
                       std::span<const double> p, int n,
                       const RiskProfile& risk) {
  std::vector<double> b(contests.size());
  for (std::size_t i = 0; i < contests.size(); ++i) {
    b[i] = beta_averse(contests[i], p[i], n, risk);
  }
  double dominate_gap = 0.0;
  double tie_gap = 0.0;
  for (std::size_t i = 0; i < contests.size(); ++i) {
    if (p[i] <= kProbTol) continue;
    for (std::size_t j = 0; j < contests.size(); ++j) {
      dominate_gap = std::max(dominate_gap, b[j] - b[i]);
      if (p[j] > kProbTol) tie_gap = std::max(tie_gap, std::abs(b[i] - b[j]));
    }
  }
  return std::max(0.0, dominate_gap) + tie_gap;
}

}  // namespace

std::vector<ParticipationEquilibrium> solve_two_contest_risk_averse(
    const GammaProfile& c1, const GammaProfile& c2, int n,
    const RiskProfile& risk, int grid_points) {
  if (!risk.is_identity()) {
    require_unit_reward(c1);
    require_unit_reward(c2);
  }
  std::vector<GammaProfile> contests{c1, c2};
  if (n == 1) {
    // Constant transformed utility: report the canonical splits.
    std::vector<ParticipationEquilibrium> result;
    for (double p1 : {0.0, 0.5, 1.0}) {
      ParticipationEquilibrium eq;
      eq.probabilities = {p1, 1.0 - p1};
      for (std::size_t i = 0; i < 2; ++i) {
        if (eq.probabilities[i] > kProbTol) eq.support.push_back(i);
      }
      eq.common_utility = risk.apply(1.0);
      result.push_back(std::move(eq));
    }
    return result;
  }
  const auto gap = [&](double p1) {
    return beta_averse(c1, p1, n, risk) - beta_averse(c2, 1.0 - p1, n, risk);
  };

  std::vector<double> roots;
  const auto push = [&roots](double p1) {
    for (double r : roots) {
      if (std::abs(r - p1) < 1e-10) return;
    }
    roots.push_back(p1);
  };

  for (int pass = 0; pass < 3 && roots.empty(); ++pass) {
    const int grid = grid_points * (pass == 0 ? 1 : (pass == 1 ? 10 : 100));
    double prev = gap(0.0);
    if (prev == 0.0) push(0.0);
    for (int i = 1; i <= grid; ++i) {
      const double x = static_cast<double>(i) / grid;
      const double cur = gap(x);
      if (cur == 0.0) {
        push(x);
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
        push(0.5 * (lo + hi));
      }
      prev = cur;
    }
    // Boundary equilibria: the lone supported contest must weakly dominate
    // in transformed utility.
    if (gap(0.0) <= kResidualTol) push(0.0);
    if (gap(1.0) >= -kResidualTol) push(1.0);
  }
  if (roots.empty()) {
    throw std::runtime_error(
        "risk-averse two-contest scan found no equilibrium after widening");
  }
  std::sort(roots.begin(), roots.end());

  std::vector<ParticipationEquilibrium> result;
  result.reserve(roots.size());
  for (double p1 : roots) {
    ParticipationEquilibrium eq;
    std::vector<double> p{p1, 1.0 - p1};
    for (double& v : p) {
      if (v < kProbTol) v = 0.0;
    }
    const double total = p[0] + p[1];
    p[0] /= total;
    p[1] /= total;
    eq.probabilities = p;
    double u_c = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      if (p[i] > 0.0) {
        eq.support.push_back(i);
        u_c += p[i] * beta_averse(contests[i], p[i], n, risk);
      }
    }
    eq.common_utility = u_c;
    eq.residual = residual_averse(contests, p, n, risk);
    result.push_back(std::move(eq));
  }
  return result;
}

std::vector<double> uniform_tau_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("bad grid parameters");
  }
  std::vector<double> grid;
  const int count = static_cast<int>(std::round((hi - lo) / step));
  grid.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    grid.push_back(std::min(hi, lo + step * i));
  }
  return grid;
}

TauScanResult risk_averse_best_response_scan(std::span<const double> tau_grid,
                                             double opponent_tau, int n,
                                             const RiskProfile& risk) {
  if (tau_grid.empty()) {
    throw std::invalid_argument("tau grid must not be empty");
  }
  for (double tau : tau_grid) {
    if (!(tau >= 0.0 && tau <= 2.0)) {
      throw std::invalid_argument(
          "pure effort-stage equilibria back the transform only for tau in "
          "[0, 2]");
    }
  }
  if (!(opponent_tau >= 0.0 && opponent_tau <= 2.0)) {
    throw std::invalid_argument("opponent tau must be in [0, 2]");
  }

  const GammaProfile opponent = tullock_gamma({1.0, opponent_tau}, n);
  TauScanResult result;
  result.taus.assign(tau_grid.begin(), tau_grid.end());
  result.utilities.resize(tau_grid.size());
  result.best_utility = -1.0;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    const GammaProfile own = tullock_gamma({1.0, tau_grid[i]}, n);
    const auto equilibria =
        solve_two_contest_risk_averse(own, opponent, n, risk);
    // Designers stay risk neutral: utility comes from realized efforts, so
    // the plain (untransformed) beta enters here.
    const double p1 = equilibria.front().probabilities[0];
    const double u = 1.0 - std::pow(1.0 - p1, n) -
                     static_cast<double>(n) * p1 * beta(own, p1, n);
    result.utilities[i] = u;
    if (u > result.best_utility) {
      result.best_utility = u;
      result.best_tau = tau_grid[i];
    }
  }
  return result;
}

}  // namespace ccg
