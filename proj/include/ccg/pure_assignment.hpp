#ifndef CCG_PURE_ASSIGNMENT_HPP
#define CCG_PURE_ASSIGNMENT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ccg/contest.hpp"

namespace ccg {

// Deterministic participation outcome: contest_of[l] is the contest chosen by
// contestant l.
struct PureAssignment {
  std::vector<int> contest_of;

  bool operator==(const PureAssignment&) const = default;

  // Headcount per contest.
  std::vector<int> headcounts(int num_contests) const;
};

// Pure Nash condition: for every contestant in contest i with headcount k_i
// and every other contest j, gamma_i(k_i) >= gamma_j(k_j + 1).
bool is_pure_equilibrium(std::span<const GammaProfile> contests,
                         const PureAssignment& assignment);

// All pure-strategy participation equilibria among m^n assignments.
// Throws CapExceededError when m^n exceeds `cap`.
std::vector<PureAssignment> enumerate_pure_equilibria(
    std::span<const GammaProfile> contests, int n,
    std::size_t cap = 1'000'000);

}  // namespace ccg

#endif  // CCG_PURE_ASSIGNMENT_HPP
