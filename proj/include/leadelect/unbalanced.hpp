#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leadelect/flip.hpp"
#include "leadelect/rational.hpp"

namespace leadelect {

// Realizes an unbalanced flip as a chain of balanced ones. steps holds the
// k-bit truncated binary expansion of the target q, MSB first. Execution: at
// step i play one balanced flip; on a 1-bit the first party wins outright by
// winning the step, on a 0-bit the second party wins outright when the first
// loses the step; otherwise play continues, and exhausting all k steps hands
// the win to the second party. That tie rule makes the first party's honest
// chance exactly achieved_x = sum b_i 2^-i.
struct UnbalancedPlan {
  std::vector<bool> steps;
  Rational achieved_x;
  Rational per_flip_epsilon;
  Rational composed_bias_bound;  // 2 * per_flip_epsilon
};

// Throws ConstructionRejected when the truncation leaves a party with zero
// winning probability (all-zero bit vector, i.e. q_target < 2^-k).
UnbalancedPlan build_unbalanced_plan(const Rational& q_target, unsigned k,
                                     const Rational& per_flip_epsilon);

// Exact backward recursion over the chain. Without a cheater: the first
// party's winning probability (equals achieved_x). With a cheater: that
// party's maximal winning probability when it takes 1/2 + per_flip_epsilon
// at every constituent flip and always steers toward the better branch.
Rational evaluate_plan_exact(const UnbalancedPlan& plan,
                             std::optional<Party> cheater = std::nullopt);

// Rounds to realize one P_{q, target_epsilon}: a single balanced flip when
// q == 1/2, otherwise k * N_{target_epsilon/2} with
// k = 1 + ceil(log2(2 / target_epsilon)).
std::uint64_t plan_rounds(const Rational& q_target,
                          const Rational& target_epsilon,
                          const RoundsModel& rounds_model);

}  // namespace leadelect
