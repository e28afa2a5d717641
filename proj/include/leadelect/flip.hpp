#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "leadelect/errors.hpp"
#include "leadelect/rational.hpp"
#include "leadelect/rng.hpp"

namespace leadelect {

enum class Party : int { first = 0, second = 1 };

inline Party other(Party p) {
  return p == Party::first ? Party::second : Party::first;
}

struct Outcome {
  Party winner = Party::first;
};

// One abstract weak coin flip: the first party wins with probability q when
// both play honestly, and no cheater can shift its own winning probability by
// more than epsilon. q in (0,1), epsilon in [0,1/2) are hard invariants;
// whether both honest guarantees (q - eps, 1 - q - eps) stay positive is a
// queryable property checked where it matters (resolving a flip needs it,
// analysing a tree clamps instead).
class FlipSpec {
public:
  FlipSpec(Rational q, Rational epsilon);

  const Rational& q() const { return q_; }
  const Rational& epsilon() const { return epsilon_; }

  Rational guarantee(Party p) const;  // honest win probability vs. a cheater
  bool guarantees_positive() const;
  bool is_balanced() const { return q_ == Rational(1, 2); }

  friend bool operator==(const FlipSpec& a, const FlipSpec& b) {
    return a.q_ == b.q_ && a.epsilon_ == b.epsilon_;
  }

private:
  Rational q_;
  Rational epsilon_;
};

// Exact outcome law of one flip, taking "first" as the q-favored side of the
// spec. The cheater is always charged the full bias advantage. Requires at
// least one honest party; throws ContractError otherwise.
Rational first_win_probability(const FlipSpec& spec, bool first_honest,
                               bool second_honest);

// Samples one flip. Honest-vs-anything follows first_win_probability; with
// no honest party the coalition decides, so adversary_choice is required.
template <typename Rng>
Outcome resolve_flip(const FlipSpec& spec, bool first_honest,
                     bool second_honest, std::optional<Party> adversary_choice,
                     Rng& rng) {
  if (!spec.guarantees_positive()) {
    throw ConstructionRejected(
        "resolve_flip: spec gives an honest party no guarantee (q=" +
        spec.q().str() + ", epsilon=" + spec.epsilon().str() + ")");
  }
  if (!first_honest && !second_honest) {
    if (!adversary_choice.has_value()) {
      throw ContractError(
          "resolve_flip: adversary_choice required when neither party is honest");
    }
    return Outcome{*adversary_choice};
  }
  const Rational p = first_win_probability(spec, first_honest, second_honest);
  return Outcome{exact_bernoulli(p, rng) ? Party::first : Party::second};
}

// Round-cost model for the underlying balanced flip: maps a bias budget to
// the number of rounds one P_eps invocation takes. The cost function is
// opaque; it is only ever evaluated pointwise.
class RoundsModel {
public:
  using CostFn = std::function<std::uint64_t(const Rational& epsilon)>;

  explicit RoundsModel(CostFn n_eps) : n_eps_(std::move(n_eps)) {}

  static RoundsModel unit() { return constant(1); }
  static RoundsModel constant(std::uint64_t rounds);
  // Exact-match lookup; unknown bias values are an error.
  static RoundsModel from_table(std::map<Rational, std::uint64_t> table);

  std::uint64_t operator()(const Rational& epsilon) const;

private:
  CostFn n_eps_;
};

}  // namespace leadelect
