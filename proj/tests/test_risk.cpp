#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccg/designer_game.hpp"
#include "ccg/risk.hpp"
#include "generators.hpp"

using namespace ccg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE_BEGIN("risk");

TEST_CASE("transform families") {
  SUBCASE("quartic transform is a valid averse utility") {
    const auto a = RiskProfile::quartic_averse();
    CHECK(a.apply(0.0) == doctest::Approx(0.0));
    CHECK(a.apply(1.0) == doctest::Approx(1.0));
    CHECK(a.apply(0.25) == doctest::Approx(175.0 / 256.0).epsilon(1e-14));
    // Strictly increasing and concave on a 1e-3 grid.
    double prev = a.apply(0.0);
    double prev_diff = -1.0;
    for (int i = 1; i <= 1000; ++i) {
      const double cur = a.apply(i / 1000.0);
      const double diff = cur - prev;
      CHECK(diff > 0.0);
      if (prev_diff >= 0.0) CHECK(diff <= prev_diff + 1e-12);
      prev_diff = diff;
      prev = cur;
    }
  }
  SUBCASE("polynomial form accepts the quartic coefficients") {
    const auto a = RiskProfile::polynomial({0.0, 4.0, -6.0, 4.0, -1.0});
    for (double x : {0.0, 0.3, 0.7, 1.0}) {
      CHECK(a.apply(x) ==
            doctest::Approx(1.0 - std::pow(1.0 - x, 4)).epsilon(1e-13));
    }
  }
  SUBCASE("bad polynomials are rejected") {
    CHECK_THROWS_AS(RiskProfile::polynomial({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(RiskProfile::polynomial({0.0, -1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RiskProfile::polynomial({}), std::invalid_argument);
  }
}

TEST_CASE("transformed participation utility") {
  SUBCASE("identity transform reproduces beta exactly") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto id = RiskProfile::identity();
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const auto c = testgen::random_profile(rng, 1.0, n);
      const double p = unit(rng);
      CHECK(beta_averse(c, p, n, id) == beta(c, p, n));
    }
  }
  SUBCASE("dissipating contest keeps only the empty-field term") {
    const auto a = RiskProfile::quartic_averse();
    const auto frd = tullock_gamma({1.0, 2.0}, 5);
    for (double p : {0.0, 0.3, 0.6, 1.0}) {
      CHECK(beta_averse(frd, p, 5, a) ==
            doctest::Approx(std::pow(1.0 - p, 4)).epsilon(1e-13));
    }
  }
  SUBCASE("non-unit reward needs a rescaled transform") {
    const auto a = RiskProfile::quartic_averse();
    const auto big = tullock_gamma({2.0, 1.0}, 3);
    CHECK_THROWS_AS(beta_averse(big, 0.5, 3, a), std::invalid_argument);
    CHECK_NOTHROW(beta_averse(big, 0.5, 3, RiskProfile::identity()));
  }
}

TEST_CASE("risk-averse two-contest equilibria") {
  const auto a = RiskProfile::quartic_averse();
  const auto tau1 = tullock_gamma({1.0, 1.0}, 2);
  const auto tau2 = tullock_gamma({1.0, 2.0}, 2);
  SUBCASE("tau=1 versus tau=2 lands on the closed-form split") {
    const auto eqs = solve_two_contest_risk_averse(tau1, tau2, 2, a);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].probabilities[0] ==
          doctest::Approx(256.0 / 337.0).epsilon(1e-10));
    CHECK(eqs[0].residual <= 1e-9);
    const double u1 = designer_utility(tau1, eqs[0].probabilities[0], 2);
    CHECK(u1 == doctest::Approx(0.2885294402521815).epsilon(1e-9));
  }
  SUBCASE("identical contests split evenly") {
    const auto eqs = solve_two_contest_risk_averse(tau2, tau2, 2, a);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].probabilities[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(designer_utility(tau2, 0.5, 2) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("identity transform agrees with the untransformed solver") {
    // Rewards above 1 are fine for the identity transform; no spurious
    // boundary equilibrium may appear.
    const auto big = tullock_gamma({5.0, 1.0}, 2);
    const auto mid = tullock_gamma({3.0, 0.0}, 2);  // gamma(2) = 1.5
    const auto id = RiskProfile::identity();
    const auto eqs = solve_two_contest_risk_averse(big, mid, 2, id);
    const auto ref = solve_two_contest(big, mid, 2);
    REQUIRE(eqs.size() == ref.size());
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      CHECK(eqs[i].probabilities[0] ==
            doctest::Approx(ref[i].probabilities[0]).epsilon(1e-10));
      CHECK(eqs[i].residual <= 1e-9);
    }
  }
}

TEST_CASE("best-response scan over the exponent grid") {
  const auto a = RiskProfile::quartic_averse();
  SUBCASE("tau=1 beats tau=2 against a dissipating opponent") {
    const std::vector<double> grid{1.0, 2.0};
    const auto scan = risk_averse_best_response_scan(grid, 2.0, 2, a);
    CHECK(scan.best_tau == 1.0);
    CHECK(scan.utilities[0] == doctest::Approx(0.288529).epsilon(1e-5));
    CHECK(scan.utilities[1] == doctest::Approx(0.25).epsilon(1e-9));
  }
  SUBCASE("risk-neutral contestants restore the dissipating optimum") {
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
    const auto scan = risk_averse_best_response_scan(
        grid, 2.0, 2, RiskProfile::identity());
    CHECK(scan.best_tau == 2.0);
  }
  SUBCASE("grid must stay inside the pure-equilibrium range") {
    const std::vector<double> grid{1.0, 2.5};
    CHECK_THROWS_AS(risk_averse_best_response_scan(grid, 2.0, 2, a),
                    std::invalid_argument);
    const std::vector<double> ok{1.0};
    CHECK_THROWS_AS(risk_averse_best_response_scan(ok, kInf, 2, a),
                    std::invalid_argument);
  }
  SUBCASE("uniform grid helper covers both ends") {
    const auto grid = uniform_tau_grid(0.0, 2.0, 1e-3);
    CHECK(grid.size() == 2001);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 2.0);
  }
}

TEST_SUITE_END();
