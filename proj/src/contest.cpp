#include "ccg/contest.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ccg {

namespace {

void validate_gamma(double reward, const std::vector<double>& gamma) {
  if (!(reward > 0.0) || !std::isfinite(reward)) {
    throw std::invalid_argument("contest reward must be positive and finite");
  }
  if (gamma.empty()) {
    throw std::invalid_argument("gamma vector must not be empty");
  }
  const double tol = kGammaTol * std::max(1.0, reward);
  if (std::abs(gamma.front() - reward) > tol) {
    throw std::invalid_argument(
        "gamma(1) must equal the reward (a lone contestant exerts no effort)");
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double g = gamma[i];
    const double cap = reward / static_cast<double>(i + 1);
    if (!std::isfinite(g) || g < -tol || g > cap + tol) {
      throw std::invalid_argument(
          "gamma(" + std::to_string(i + 1) + ") must lie in [0, reward/k]");
    }
  }
}

}  // namespace

GammaProfile::GammaProfile(double reward, std::vector<double> gamma)
    : reward_(reward), gamma_(std::move(gamma)) {
  validate_gamma(reward_, gamma_);
}

double GammaProfile::gamma(int k) const {
  if (k < 1 || k > max_contestants()) {
    throw std::out_of_range("headcount " + std::to_string(k) +
                            " outside [1, " +
                            std::to_string(max_contestants()) + "]");
  }
  return gamma_[static_cast<std::size_t>(k - 1)];
}

GammaProfile GammaProfile::truncated(int n) const {
  if (n < 1) {
    throw std::invalid_argument("truncation length must be at least 1");
  }
  if (n > max_contestants()) {
    throw std::invalid_argument(
        "profile covers only " + std::to_string(max_contestants()) +
        " contestants, need " + std::to_string(n));
  }
  return GammaProfile(reward_, std::vector<double>(gamma_.begin(),
                                                   gamma_.begin() + n));
}

bool GammaProfile::same_gamma(const GammaProfile& other, double tol) const {
  if (gamma_.size() != other.gamma_.size()) return false;
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    if (std::abs(gamma_[i] - other.gamma_[i]) > tol) return false;
  }
  return true;
}

namespace {

double tullock_gamma_at(double reward, double tau, int k) {
  if (k == 1) return reward;
  if (std::isinf(tau)) return 0.0;
  const double kk = static_cast<double>(k);
  if (kk / (kk - 1.0) > tau) {
    return reward * (1.0 / kk - (kk - 1.0) / (kk * kk) * tau);
  }
  return 0.0;
}

void validate_tullock(double reward, double tau) {
  if (!(reward > 0.0) || !std::isfinite(reward)) {
    throw std::invalid_argument("tullock reward must be positive and finite");
  }
  if (std::isnan(tau) || tau < 0.0) {
    throw std::invalid_argument("tullock exponent must be in [0, +inf]");
  }
}

}  // namespace

GammaProfile tullock_gamma(const TullockSpec& spec, int n) {
  validate_tullock(spec.reward, spec.tau);
  if (n < 1) {
    throw std::invalid_argument("headcount bound must be at least 1");
  }
  std::vector<double> gamma(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    gamma[static_cast<std::size_t>(k - 1)] =
        tullock_gamma_at(spec.reward, spec.tau, k);
  }
  return GammaProfile(spec.reward, std::move(gamma));
}

GammaProfile piecewise_tullock_gamma(const PiecewiseTullockSpec& spec, int n) {
  if (!(spec.reward > 0.0) || !std::isfinite(spec.reward)) {
    throw std::invalid_argument("reward must be positive and finite");
  }
  if (n < 1) {
    throw std::invalid_argument("headcount bound must be at least 1");
  }
  std::vector<double> gamma(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const auto it = spec.tau_by_headcount.find(k);
    if (it == spec.tau_by_headcount.end()) {
      throw std::invalid_argument("missing tullock exponent for headcount " +
                                  std::to_string(k));
    }
    if (std::isnan(it->second) || it->second < 0.0) {
      throw std::invalid_argument("tullock exponent must be in [0, +inf]");
    }
    gamma[static_cast<std::size_t>(k - 1)] =
        tullock_gamma_at(spec.reward, it->second, k);
  }
  return GammaProfile(spec.reward, std::move(gamma));
}

bool is_mdu(const GammaProfile& c) {
  const auto g = c.gamma_values();
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i] > g[i - 1] + kGammaTol) return false;
  }
  return true;
}

bool is_full_rent_dissipation(const GammaProfile& c) {
  const auto g = c.gamma_values();
  if (std::abs(g[0] - c.reward()) > kGammaTol * std::max(1.0, c.reward())) {
    return false;
  }
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (std::abs(g[i]) > kGammaTol) return false;
  }
  return true;
}

std::vector<std::size_t> mrd_subset(
    std::span<const GammaProfile> strategy_set) {
  if (strategy_set.empty()) return {};
  const double reward = strategy_set.front().reward();
  const int len = strategy_set.front().max_contestants();
  for (const auto& c : strategy_set) {
    if (std::abs(c.reward() - reward) > kGammaTol * std::max(1.0, reward)) {
      throw std::invalid_argument("profiles in a strategy set must share one reward");
    }
    if (c.max_contestants() != len) {
      throw std::invalid_argument("profiles in a strategy set must share one length");
    }
  }
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < strategy_set.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < strategy_set.size() && minimal; ++j) {
      if (i == j) continue;
      const auto gi = strategy_set[i].gamma_values();
      const auto gj = strategy_set[j].gamma_values();
      for (int k = 0; k < len; ++k) {
        if (gi[static_cast<std::size_t>(k)] >
            gj[static_cast<std::size_t>(k)] + kGammaTol) {
          minimal = false;
          break;
        }
      }
    }
    if (minimal) result.push_back(i);
  }
  return result;
}

double expected_total_effort(const GammaProfile& c, int k) {
  return c.reward() - static_cast<double>(k) * c.gamma(k);
}

}  // namespace ccg
