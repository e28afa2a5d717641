#include "leadelect/unbalanced.hpp"

#include <algorithm>

#include "leadelect/errors.hpp"

namespace leadelect {

namespace {

// Smallest m >= 0 with 2^m >= value (value > 0).
std::uint64_t ceil_log2(const Rational& value) {
  if (value.sign() <= 0) {
    throw ContractError("ceil_log2: value must be positive");
  }
  // For integer thresholds, 2^m >= num/den iff 2^m >= ceil(num/den).
  mpz_class t;
  mpz_cdiv_q(t.get_mpz_t(), value.numerator().get_mpz_t(),
             value.denominator().get_mpz_t());
  if (t <= 1) return 0;
  t -= 1;
  return mpz_sizeinbase(t.get_mpz_t(), 2);
}

}  // namespace

UnbalancedPlan build_unbalanced_plan(const Rational& q_target, unsigned k,
                                     const Rational& per_flip_epsilon) {
  if (q_target.sign() <= 0 || q_target >= Rational(1)) {
    throw ConstructionRejected("build_unbalanced_plan: q_target must lie in (0,1)");
  }
  if (k == 0) {
    throw ConstructionRejected("build_unbalanced_plan: k must be >= 1");
  }
  if (per_flip_epsilon.sign() < 0 || per_flip_epsilon >= Rational(1, 2)) {
    throw ConstructionRejected(
        "build_unbalanced_plan: per_flip_epsilon must lie in [0,1/2)");
  }

  // truncated = floor(q * 2^k); its k low bits, MSB first, are the steps.
  mpz_class scaled = q_target.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), k);
  mpz_class truncated;
  mpz_fdiv_q(truncated.get_mpz_t(), scaled.get_mpz_t(),
             q_target.denominator().get_mpz_t());

  if (truncated == 0) {
    throw ConstructionRejected(
        "build_unbalanced_plan: q_target=" + q_target.str() + " truncated to " +
        std::to_string(k) + " bits is all zeros; first party could never win");
  }

  UnbalancedPlan plan;
  plan.steps.resize(k);
  for (unsigned i = 0; i < k; ++i) {
    plan.steps[i] = mpz_tstbit(truncated.get_mpz_t(), k - 1 - i) != 0;
  }
  mpz_class denom(1);
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), k);
  plan.achieved_x = Rational(truncated, denom);
  plan.per_flip_epsilon = per_flip_epsilon;
  plan.composed_bias_bound = Rational(2) * per_flip_epsilon;

  if (plan.achieved_x >= Rational(1)) {
    throw ConstructionRejected(
        "build_unbalanced_plan: truncation left the second party no chance");
  }
  return plan;
}

Rational evaluate_plan_exact(const UnbalancedPlan& plan,
                             std::optional<Party> cheater) {
  if (plan.steps.empty()) {
    throw ContractError("evaluate_plan_exact: empty plan");
  }

  const Rational half(1, 2);
  if (!cheater.has_value()) {
    // First party's honest value; every step is a fair half.
    Rational value(0);  // exhausted: second party wins
    for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
      value = *it ? half * Rational(1) + half * value : half * value;
    }
    return value;
  }

  // Cheater wins each constituent flip with probability 1/2 + eps and steers
  // toward whichever continuation is worth more to it.
  const Rational win_p = half + plan.per_flip_epsilon;
  const Rational lose_p = Rational(1) - win_p;
  const bool first_cheats = *cheater == Party::first;

  Rational value = first_cheats ? Rational(0) : Rational(1);  // exhaustion
  for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it) {
    Rational on_win, on_lose;  // branch values when the cheater wins/loses the step
    if (*it) {
      // 1-bit: first party wins outright by winning the step.
      on_win = first_cheats ? Rational(1) : value;
      on_lose = first_cheats ? value : Rational(0);
    } else {
      // 0-bit: second party wins outright when the first loses the step.
      on_win = first_cheats ? value : Rational(1);
      on_lose = first_cheats ? Rational(0) : value;
    }
    value = win_p * max(on_win, on_lose) + lose_p * min(on_win, on_lose);
  }
  return value;
}

std::uint64_t plan_rounds(const Rational& q_target,
                          const Rational& target_epsilon,
                          const RoundsModel& rounds_model) {
  if (target_epsilon.sign() <= 0 || target_epsilon >= Rational(1)) {
    throw ContractError("plan_rounds: target_epsilon must lie in (0,1)");
  }
  if (q_target == Rational(1, 2)) {
    return rounds_model(target_epsilon);  // one balanced flip, no repetition
  }
  const std::uint64_t k = 1 + ceil_log2(Rational(2) / target_epsilon);
  return k * rounds_model(target_epsilon / Rational(2));
}

}  // namespace leadelect
