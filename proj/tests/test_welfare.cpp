#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "ccg/welfare.hpp"
#include "generators.hpp"

using namespace ccg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

CcgInstance duopoly_instance() {
  // Two designers with reward 1: designer 1 only tau=1, designer 2 also
  // tau=1.2 (the more dissipating member).
  const auto t1 = tullock_gamma({1.0, 1.0}, 2);
  const auto t12 = tullock_gamma({1.0, 1.2}, 2);
  return CcgInstance(2, {1.0, 1.0}, {{t1}, {t1, t12}});
}
}  // namespace

TEST_SUITE_BEGIN("welfare");

TEST_CASE("welfare report on the duopoly") {
  const auto instance = duopoly_instance();
  SUBCASE("identical exponents") {
    const auto report = welfare_of(instance, {{0, 0}});
    CHECK(report.total == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(report.designers + report.contestants ==
          doctest::Approx(report.total).epsilon(1e-12));
    CHECK(report.contestants == doctest::Approx(2.0 * 5.0 / 8.0).epsilon(1e-12));
  }
  SUBCASE("mixed exponents") {
    const auto report = welfare_of(instance, {{0, 1}});
    CHECK(report.total == doctest::Approx(1441.0 / 961.0).epsilon(1e-12));
    CHECK(report.contestants ==
          doctest::Approx(2.0 * 19.0 / 31.0).epsilon(1e-12));
    CHECK(report.total <= report.holder_bound + 1e-9);
  }
  SUBCASE("contestant welfare is n times the tied supported utility") {
    std::mt19937_64 rng(271);
    for (int trial = 0; trial < 40; ++trial) {
      const auto inst = testgen::random_mdu_instance(rng, {});
      StrategyProfile profile{std::vector<int>(
          static_cast<std::size_t>(inst.num_designers()), 0)};
      const auto out = evaluate_profile(inst, profile)[0];
      const auto report = welfare_of(inst, profile);
      const int n = inst.num_contestants();
      for (std::size_t i : out.equilibrium.support) {
        const double b = beta(inst.contest(static_cast<int>(i),
                                           profile.choice[i]),
                              out.equilibrium.probabilities[i], n);
        CHECK(report.contestants == doctest::Approx(n * b).epsilon(1e-9));
      }
      CHECK(report.designers + report.contestants ==
            doctest::Approx(report.total).epsilon(1e-9));
    }
  }
  SUBCASE("deserted contest contributes nothing") {
    const auto small = tullock_gamma({1.0, 1.0}, 2);
    const auto big = tullock_gamma({100.0, 0.0}, 2);
    CcgInstance lopsided(2, {1.0, 100.0}, {{small}, {big}});
    const auto report = welfare_of(lopsided, {{0, 0}});
    CHECK(report.per_contest_reach[0] == doctest::Approx(0.0));
    CHECK(report.total == doctest::Approx(100.0).epsilon(1e-12));
  }
}

TEST_CASE("holder bound") {
  SUBCASE("equal rewards reduce to m R - R (m-1)^n / m^(n-1)") {
    for (int m : {2, 3, 5}) {
      for (int n : {2, 3, 6}) {
        std::vector<double> rewards(static_cast<std::size_t>(m), 1.0);
        const double expected =
            m - std::pow(m - 1.0, n) / std::pow(static_cast<double>(m), n - 1);
        CHECK(holder_bound(rewards, n) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("two unit contests, two contestants") {
    const std::vector<double> rewards{1.0, 1.0};
    CHECK(holder_bound(rewards, 2) == doctest::Approx(1.5).epsilon(1e-13));
  }
  SUBCASE("three contestants: bound equals the simplex grid maximum") {
    const std::vector<double> rewards{1.0, 1.0};
    // Grid maximization of 2 - (1-p)^3 - p^3 gives 1.75 at p = 1/2.
    CHECK(holder_bound(rewards, 3) == doctest::Approx(1.75).epsilon(1e-13));
    double best = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double p = i / 10000.0;
      best = std::max(best, 2.0 - std::pow(1.0 - p, 3) - std::pow(p, 3));
    }
    CHECK(best == doctest::Approx(1.75).epsilon(1e-9));
  }
  SUBCASE("single contestant degenerates to the largest reward") {
    const std::vector<double> rewards{1.0, 3.0, 2.0};
    CHECK(holder_bound(rewards, 1) == doctest::Approx(3.0));
  }
  SUBCASE("full-dissipation profiles attain the bound") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> rdist(0.5, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const int m = 2 + static_cast<int>(rng() % 3);
      const int n = 2 + static_cast<int>(rng() % 6);
      std::vector<double> rewards;
      std::vector<std::vector<GammaProfile>> sets;
      for (int i = 0; i < m; ++i) {
        rewards.push_back(rdist(rng));
        sets.push_back({tullock_gamma({rewards.back(), kInf}, n)});
      }
      CcgInstance instance(n, rewards, sets);
      StrategyProfile all_apa{std::vector<int>(static_cast<std::size_t>(m), 0)};
      const auto report = welfare_of(instance, all_apa);
      // The auction-only profile reaches the bound whenever no contest is
      // deserted; with a deserted contest the bound is still an upper bound.
      CHECK(report.total <= report.holder_bound + 1e-9);
      bool interior = true;
      const auto outcome = evaluate_profile(instance, all_apa)[0];
      for (double p : outcome.equilibrium.probabilities) {
        interior = interior && p > 0.0;
      }
      if (interior) {
        CHECK(report.total ==
              doctest::Approx(report.holder_bound).epsilon(1e-9));
      }
    }
  }
  SUBCASE("no profile beats the bound on random menus") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
      const auto instance = testgen::random_mdu_instance(rng, {});
      const double bound =
          holder_bound(instance.rewards(), instance.num_contestants());
      StrategyProfile profile{std::vector<int>(
          static_cast<std::size_t>(instance.num_designers()), 0)};
      ProfileEvaluator eval(instance, SelectionRule::kLowestFirstProbability);
      bool more = true;
      while (more) {
        CHECK(eval.outcomes(profile)[0].welfare.total <= bound + 1e-9);
        more = false;
        for (int i = instance.num_designers() - 1; i >= 0; --i) {
          auto& v = profile.choice[static_cast<std::size_t>(i)];
          if (v + 1 < static_cast<int>(
                          instance.strategy_sets()[static_cast<std::size_t>(i)].size())) {
            ++v;
            for (std::size_t j = static_cast<std::size_t>(i) + 1;
                 j < profile.choice.size(); ++j) {
              profile.choice[j] = 0;
            }
            more = true;
            break;
          }
        }
      }
    }
  }
}

TEST_CASE("total-welfare maximality cases") {
  SUBCASE("auction available everywhere") {
    const auto apa = tullock_gamma({1.0, kInf}, 3);
    const auto t1 = tullock_gamma({1.0, 1.0}, 3);
    CcgInstance instance(3, {1.0, 1.0}, {{apa, t1}, {apa, t1}});
    const auto verdict = check_ws_maximality(instance);
    CHECK(verdict.first_case == WelfareCase::kFullRentDissipationAvailable);
    CHECK(verdict.holds);
  }
  SUBCASE("symmetric game without dissipating members") {
    const auto t05 = tullock_gamma({1.0, 0.5}, 3);
    const auto t1 = tullock_gamma({1.0, 1.0}, 3);
    CcgInstance instance(3, {1.0, 1.0}, {{t05, t1}, {t05, t1}});
    const auto verdict = check_ws_maximality(instance);
    CHECK(verdict.first_case == WelfareCase::kSymmetric);
    CHECK(verdict.holds);
    // Symmetric games are also MRD-symmetric.
    REQUIRE(verdict.all_cases.size() == 2);
    CHECK(verdict.all_cases[1] == WelfareCase::kMrdSymmetric);
  }
  SUBCASE("mrd-symmetric but not symmetric") {
    const auto t05 = tullock_gamma({1.0, 0.5}, 3);
    const auto t1 = tullock_gamma({1.0, 1.0}, 3);
    CcgInstance instance(3, {1.0, 1.0}, {{t1}, {t05, t1}});
    const auto verdict = check_ws_maximality(instance);
    CHECK(verdict.first_case == WelfareCase::kMrdSymmetric);
    CHECK(verdict.holds);
  }
  SUBCASE("the duopoly fits no case and fails maximality") {
    const auto verdict = check_ws_maximality(duopoly_instance());
    CHECK(verdict.first_case == WelfareCase::kNone);
    CHECK(verdict.all_cases.empty());
    CHECK_FALSE(verdict.holds);
    CHECK(verdict.argmax_profile.choice == std::vector<int>{0, 0});
    CHECK(verdict.max_total == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(verdict.mrd_total ==
          doctest::Approx(1441.0 / 961.0).epsilon(1e-12));
  }
}

TEST_CASE("contestant-welfare minimality") {
  SUBCASE("holds on the duopoly even though maximality fails") {
    const auto verdict = check_wc_minimality(duopoly_instance());
    CHECK(verdict.holds);
    CHECK(verdict.mrd_contestants ==
          doctest::Approx(2.0 * 19.0 / 31.0).epsilon(1e-12));
    CHECK(verdict.worst_margin >= -1e-9);
  }
  SUBCASE("symmetric auction menus") {
    const auto apa = tullock_gamma({1.0, kInf}, 4);
    const auto t0 = tullock_gamma({1.0, 0.0}, 4);
    CcgInstance instance(4, {1.0, 1.0}, {{apa, t0}, {apa, t0}});
    const auto verdict = check_wc_minimality(instance);
    CHECK(verdict.holds);
    CHECK(verdict.mrd_contestants ==
          doctest::Approx(4.0 * std::pow(0.5, 3)).epsilon(1e-12));
  }
  SUBCASE("free-tail pair leaves contestants more than the auction pair") {
    const auto apa = tullock_gamma({1.0, kInf}, 6);
    PiecewiseTullockSpec tail{1.0, {{1, kInf}, {2, kInf}, {3, kInf},
                                    {4, kInf}, {5, 0.0}, {6, 0.0}}};
    const auto c = piecewise_tullock_gamma(tail, 6);
    CcgInstance instance(6, {1.0, 1.0}, {{apa, c}, {apa, c}});
    const auto verdict = check_wc_minimality(instance);
    CHECK(verdict.holds);
    // W_C at the auction pair is 6 * (1/2)^5; the free-tail pair pays
    // contestants 6 * 13/192 and the mixed profile sits in between.
    CHECK(verdict.mrd_contestants ==
          doctest::Approx(6.0 / 32.0).epsilon(1e-12));
    CHECK(welfare_of(instance, {{1, 1}}).contestants ==
          doctest::Approx(6.0 * 13.0 / 192.0).epsilon(1e-9));
    CHECK(welfare_of(instance, {{0, 1}}).contestants >
          verdict.mrd_contestants);
  }
  SUBCASE("random menus always satisfy minimality") {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 40; ++trial) {
      const auto instance = testgen::random_mdu_instance(rng, {});
      CHECK(check_wc_minimality(instance).holds);
    }
  }
}

TEST_SUITE_END();
