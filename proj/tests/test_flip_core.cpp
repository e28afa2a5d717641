#include <doctest.h>

#include <cstdint>
#include <vector>

#include "leadelect/errors.hpp"
#include "leadelect/flip.hpp"
#include "leadelect/rng.hpp"
#include "leadelect/unbalanced.hpp"

using namespace leadelect;

namespace {

// Replays a fixed word sequence so threshold behavior can be pinned exactly.
struct ScriptedRng {
  using result_type = std::uint64_t;
  std::vector<std::uint64_t> words;
  std::size_t next = 0;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    REQUIRE(next < words.size());
    return words[next++];
  }
};

}  // namespace

TEST_CASE("FlipSpec validates hard invariants") {
  CHECK_NOTHROW(FlipSpec(Rational(1, 2), Rational(0)));
  CHECK_NOTHROW(FlipSpec(Rational(2, 3), Rational(1, 100)));
  CHECK_THROWS_AS(FlipSpec(Rational(0), Rational(0)), ConstructionRejected);
  CHECK_THROWS_AS(FlipSpec(Rational(1), Rational(0)), ConstructionRejected);
  CHECK_THROWS_AS(FlipSpec(Rational(1, 2), Rational(1, 2)),
                  ConstructionRejected);
  CHECK_THROWS_AS(FlipSpec(Rational(1, 2), Rational(-1, 10)),
                  ConstructionRejected);
}

TEST_CASE("guarantees and the outcome law") {
  const FlipSpec spec(Rational(2, 3), Rational(1, 100));
  CHECK(spec.guarantee(Party::first) == Rational(2, 3) - Rational(1, 100));
  CHECK(spec.guarantee(Party::second) == Rational(1, 3) - Rational(1, 100));
  CHECK(spec.guarantees_positive());

  // Both honest: q. Honest vs cheater: the cheater extracts the full bias.
  CHECK(first_win_probability(spec, true, true) == Rational(2, 3));
  CHECK(first_win_probability(spec, true, false) ==
        Rational(2, 3) - Rational(1, 100));
  CHECK(first_win_probability(spec, false, true) ==
        Rational(2, 3) + Rational(1, 100));
  CHECK_THROWS_AS(first_win_probability(spec, false, false), ContractError);

  // A flip whose unfavored guarantee is destroyed has no outcome law.
  const FlipSpec broken(Rational(256, 257), Rational(1, 180));
  CHECK_FALSE(broken.guarantees_positive());
  SplitMix64 rng(1);
  CHECK_THROWS_AS(
      resolve_flip(broken, true, true, std::nullopt, rng),
      ConstructionRejected);
}

TEST_CASE("outcome probabilities pair to 1 in every configuration") {
  const FlipSpec specs[] = {FlipSpec(Rational(1, 2), Rational(0)),
                            FlipSpec(Rational(2, 3), Rational(1, 100)),
                            FlipSpec(Rational(4, 7), Rational(1, 210)),
                            FlipSpec(Rational(1, 5), Rational(3, 20))};
  for (const FlipSpec& spec : specs) {
    for (const bool fh : {true, false}) {
      for (const bool sh : {true, false}) {
        if (!fh && !sh) continue;
        const Rational p_first = first_win_probability(spec, fh, sh);
        const Rational p_second = Rational(1) - p_first;
        CHECK(p_first >= Rational(0));
        CHECK(p_first <= Rational(1));
        CHECK(p_first + p_second == Rational(1));
      }
    }
  }
}

TEST_CASE("resolve_flip contracts") {
  const FlipSpec spec(Rational(2, 3), Rational(1, 100));
  SplitMix64 rng(7);
  // Full coalition control is deterministic.
  for (int i = 0; i < 32; ++i) {
    const Outcome o =
        resolve_flip(spec, false, false, Party::second, rng);
    CHECK(o.winner == Party::second);
  }
  CHECK_THROWS_AS(resolve_flip(spec, false, false, std::nullopt, rng),
                  ContractError);
}

TEST_CASE("exact_bernoulli thresholds, small denominator") {
  const Rational p(2, 3);
  // den 3 -> mask 3; draws 0,1 accept-true, 2 accept-false, 3 rejected.
  {
    ScriptedRng rng{{0}};
    CHECK(exact_bernoulli(p, rng));
  }
  {
    ScriptedRng rng{{1}};
    CHECK(exact_bernoulli(p, rng));
  }
  {
    ScriptedRng rng{{2}};
    CHECK_FALSE(exact_bernoulli(p, rng));
  }
  {
    ScriptedRng rng{{3, 2}};  // 3 is rejected, then 2 decides
    CHECK_FALSE(exact_bernoulli(p, rng));
    CHECK(rng.next == 2);
  }
  ScriptedRng unused{{}};
  CHECK_FALSE(exact_bernoulli(Rational(0), unused));
  CHECK(exact_bernoulli(Rational(1), unused));
  CHECK(unused.next == 0);
}

TEST_CASE("exact_bernoulli thresholds, wide denominator") {
  // p = 1/2^70: decided true only after 70 leading zero bits.
  const Rational p = Rational::pow2(-70);
  {
    ScriptedRng rng{{0ull, 0ull}};
    CHECK(exact_bernoulli(p, rng));
    CHECK(rng.next == 2);
  }
  {
    ScriptedRng rng{{~0ull}};
    CHECK_FALSE(exact_bernoulli(p, rng));
    CHECK(rng.next == 1);
  }
  {
    // First word 0 leaves it undecided; a second word of 2^6 lands exactly
    // on the boundary A/2^128 = p, which is a miss (X >= p).
    ScriptedRng rng{{0ull, 64ull}};
    CHECK_FALSE(exact_bernoulli(p, rng));
  }
  {
    ScriptedRng rng{{0ull, 63ull}};
    CHECK(exact_bernoulli(p, rng));
  }
}

TEST_CASE("exact_bernoulli empirical rate at 5 sigma") {
  const Rational p(2, 3);
  SplitMix64 rng(2026);
  const int trials = 200000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += exact_bernoulli(p, rng) ? 1 : 0;
  const double est = static_cast<double>(hits) / trials;
  const double se = std::sqrt((2.0 / 3) * (1.0 / 3) / trials);
  CHECK(std::abs(est - 2.0 / 3) < 5 * se);
}

TEST_CASE("build_unbalanced_plan truncates the binary expansion") {
  SUBCASE("one balanced flip for q=1/2") {
    const UnbalancedPlan plan =
        build_unbalanced_plan(Rational(1, 2), 1, Rational(0));
    CHECK(plan.steps == std::vector<bool>{true});
    CHECK(plan.achieved_x == Rational(1, 2));
  }
  SUBCASE("q=2/3 truncated to 4 bits") {
    const UnbalancedPlan plan =
        build_unbalanced_plan(Rational(2, 3), 4, Rational(1, 100));
    CHECK(plan.steps == std::vector<bool>{true, false, true, false});
    CHECK(plan.achieved_x == Rational(5, 8));
    CHECK(abs(plan.achieved_x - Rational(2, 3)) == Rational(1, 24));
    CHECK(abs(plan.achieved_x - Rational(2, 3)) <= Rational(1, 16));
    CHECK(plan.composed_bias_bound == Rational(1, 50));
  }
  SUBCASE("dyadic targets are exact") {
    const UnbalancedPlan plan =
        build_unbalanced_plan(Rational(3, 4), 2, Rational(0));
    CHECK(plan.steps == std::vector<bool>{true, true});
    CHECK(plan.achieved_x == Rational(3, 4));
  }
  SUBCASE("all-zero truncation is rejected") {
    CHECK_THROWS_AS(build_unbalanced_plan(Rational(1, 1000), 3, Rational(0)),
                    ConstructionRejected);
    CHECK_THROWS_AS(build_unbalanced_plan(Rational(0), 4, Rational(0)),
                    ConstructionRejected);
    CHECK_THROWS_AS(build_unbalanced_plan(Rational(1, 2), 0, Rational(0)),
                    ConstructionRejected);
  }
}

TEST_CASE("truncation error stays under 2^-k on a dense grid") {
  for (int den : {101, 64, 97}) {
    for (int num = 1; num < den; ++num) {
      const Rational q(num, den);
      for (unsigned k = 1; k <= 32; ++k) {
        if (q < Rational::pow2(-static_cast<long>(k))) {
          CHECK_THROWS_AS(build_unbalanced_plan(q, k, Rational(0)),
                          ConstructionRejected);
          continue;
        }
        const UnbalancedPlan plan = build_unbalanced_plan(q, k, Rational(0));
        CHECK(abs(plan.achieved_x - q) <= Rational::pow2(-static_cast<long>(k)));
        // achieved_x is a dyadic with denominator dividing 2^k.
        mpz_class rem;
        mpz_class two_k(1);
        mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), k);
        mpz_mod(rem.get_mpz_t(), two_k.get_mpz_t(),
                plan.achieved_x.denominator().get_mpz_t());
        CHECK(rem == 0);
      }
    }
  }
}

TEST_CASE("chain recursion reproduces the closed-form honest value") {
  for (int den : {7, 12, 33, 100}) {
    for (int num = 1; num < den; num += 3) {
      const Rational q(num, den);
      for (unsigned k = 1; k <= 16; ++k) {
        if (q < Rational::pow2(-static_cast<long>(k))) continue;
        const UnbalancedPlan plan = build_unbalanced_plan(q, k, Rational(1, 64));
        CHECK(evaluate_plan_exact(plan) == plan.achieved_x);
      }
    }
  }
}

TEST_CASE("cheater value respects the doubled-bias bound") {
  const Rational epsilons[] = {Rational(1, 1000), Rational(1, 100)};
  for (int den : {9, 16, 53, 101}) {
    for (int num = 1; num < den; num += 2) {
      const Rational q(num, den);
      for (unsigned k = 1; k <= 16; k += 3) {
        if (q < Rational::pow2(-static_cast<long>(k))) continue;
        for (const Rational& eps : epsilons) {
          const UnbalancedPlan plan = build_unbalanced_plan(q, k, eps);
          const Rational twice_eps = Rational(2) * eps;
          const Rational first_cheat =
              evaluate_plan_exact(plan, Party::first);
          const Rational second_cheat =
              evaluate_plan_exact(plan, Party::second);
          CHECK(first_cheat <= plan.achieved_x + twice_eps);
          CHECK(second_cheat <= Rational(1) - plan.achieved_x + twice_eps);
          // Cheating can only help.
          CHECK(first_cheat >= plan.achieved_x);
          CHECK(second_cheat >= Rational(1) - plan.achieved_x);
        }
      }
    }
  }
}

TEST_CASE("cheater value is monotone in the per-flip bias") {
  const Rational grid[] = {Rational(0), Rational(1, 1000), Rational(1, 100),
                           Rational(1, 10)};
  for (const Rational& q : {Rational(2, 3), Rational(5, 8), Rational(3, 10)}) {
    for (const Party cheater : {Party::first, Party::second}) {
      Rational prev(-1);
      for (const Rational& eps : grid) {
        const UnbalancedPlan plan = build_unbalanced_plan(q, 8, eps);
        const Rational value = evaluate_plan_exact(plan, cheater);
        CHECK(value >= prev);
        prev = value;
      }
    }
  }
}

TEST_CASE("plan_rounds follows the doubling-and-truncation recipe") {
  // Balanced flips need no repetition.
  CHECK(plan_rounds(Rational(1, 2), Rational(1, 100),
                    RoundsModel::constant(1000)) == 1000);
  // q=2/3 at target 1/8: k = 1 + ceil(log2 16) = 5.
  CHECK(plan_rounds(Rational(2, 3), Rational(1, 8),
                    RoundsModel::constant(100)) == 500);
  // k is non-decreasing as the target bias shrinks.
  std::uint64_t prev = 0;
  for (int d = 2; d <= 4096; d *= 2) {
    const std::uint64_t r =
        plan_rounds(Rational(2, 3), Rational(1, d), RoundsModel::unit());
    CHECK(r >= prev);
    prev = r;
  }
  CHECK_THROWS_AS(
      plan_rounds(Rational(2, 3), Rational(0), RoundsModel::unit()),
      ContractError);
}

TEST_CASE("rounds model table lookup is exact-match") {
  const RoundsModel model = RoundsModel::from_table(
      {{Rational(1, 16), 100}, {Rational(1, 8), 40}});
  CHECK(model(Rational(1, 16)) == 100);
  CHECK(model(Rational(2, 16)) == 40);  // canonical form matches 1/8
  CHECK_THROWS_AS(model(Rational(1, 7)), ContractError);
  CHECK_THROWS_AS(RoundsModel::constant(0), ContractError);
}
