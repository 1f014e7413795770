#include "ccg/pure_assignment.hpp"

#include <stdexcept>
#include <string>

#include "ccg/errors.hpp"

namespace ccg {

std::vector<int> PureAssignment::headcounts(int num_contests) const {
  std::vector<int> counts(static_cast<std::size_t>(num_contests), 0);
  for (int c : contest_of) {
    if (c < 0 || c >= num_contests) {
      throw std::invalid_argument("assignment references contest " +
                                  std::to_string(c));
    }
    ++counts[static_cast<std::size_t>(c)];
  }
  return counts;
}

bool is_pure_equilibrium(std::span<const GammaProfile> contests,
                         const PureAssignment& assignment) {
  const int m = static_cast<int>(contests.size());
  const auto counts = assignment.headcounts(m);
  // Only headcounts enter the deviation condition, so check each occupied
  // contest once instead of each contestant.
  for (int i = 0; i < m; ++i) {
    const int k_i = counts[static_cast<std::size_t>(i)];
    if (k_i == 0) continue;
    const double stay = contests[static_cast<std::size_t>(i)].gamma(k_i);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const int k_j = counts[static_cast<std::size_t>(j)];
      const double leave = contests[static_cast<std::size_t>(j)].gamma(k_j + 1);
      if (leave > stay + kGammaTol) return false;
    }
  }
  return true;
}

std::vector<PureAssignment> enumerate_pure_equilibria(
    std::span<const GammaProfile> contests, int n, std::size_t cap) {
  if (contests.empty()) {
    throw std::invalid_argument("need at least one contest");
  }
  if (n < 1) {
    throw std::invalid_argument("need at least one contestant");
  }
  const std::size_t m = contests.size();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / m + 1) {
      throw CapExceededError("assignment space exceeds the cap");
    }
    total *= m;
  }
  if (total > cap) {
    throw CapExceededError("assignment space exceeds the cap");
  }

  std::vector<PureAssignment> result;
  PureAssignment assignment{std::vector<int>(static_cast<std::size_t>(n), 0)};
  while (true) {
    if (is_pure_equilibrium(contests, assignment)) {
      result.push_back(assignment);
    }
    int pos = n - 1;
    while (pos >= 0 &&
           assignment.contest_of[static_cast<std::size_t>(pos)] ==
               static_cast<int>(m) - 1) {
      assignment.contest_of[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assignment.contest_of[static_cast<std::size_t>(pos)];
  }
  return result;
}

}  // namespace ccg
