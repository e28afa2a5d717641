#include "leadelect/flip.hpp"

namespace leadelect {

FlipSpec::FlipSpec(Rational q, Rational epsilon)
    : q_(std::move(q)), epsilon_(std::move(epsilon)) {
  if (q_.sign() <= 0 || q_ >= Rational(1)) {
    throw ConstructionRejected("FlipSpec: q must lie in (0,1), got " + q_.str());
  }
  if (epsilon_.sign() < 0 || epsilon_ >= Rational(1, 2)) {
    throw ConstructionRejected("FlipSpec: epsilon must lie in [0,1/2), got " +
                               epsilon_.str());
  }
}

Rational FlipSpec::guarantee(Party p) const {
  return (p == Party::first ? q_ : Rational(1) - q_) - epsilon_;
}

bool FlipSpec::guarantees_positive() const {
  return guarantee(Party::first).sign() > 0 &&
         guarantee(Party::second).sign() > 0;
}

Rational first_win_probability(const FlipSpec& spec, bool first_honest,
                               bool second_honest) {
  if (first_honest && second_honest) return spec.q();
  if (first_honest) return spec.q() - spec.epsilon();   // cheater takes full bias
  if (second_honest) return spec.q() + spec.epsilon();  // == 1 - ((1-q) - eps)
  throw ContractError(
      "first_win_probability: undefined when neither party is honest");
}

RoundsModel RoundsModel::constant(std::uint64_t rounds) {
  if (rounds == 0) {
    throw ContractError("RoundsModel: round cost must be positive");
  }
  return RoundsModel([rounds](const Rational&) { return rounds; });
}

RoundsModel RoundsModel::from_table(std::map<Rational, std::uint64_t> table) {
  for (const auto& [eps, rounds] : table) {
    if (rounds == 0) {
      throw ContractError("RoundsModel: round cost must be positive (epsilon " +
                          eps.str() + ")");
    }
  }
  return RoundsModel([table = std::move(table)](const Rational& eps) {
    const auto it = table.find(eps);
    if (it == table.end()) {
      throw ContractError("RoundsModel: no table entry for epsilon " + eps.str());
    }
    return it->second;
  });
}

std::uint64_t RoundsModel::operator()(const Rational& epsilon) const {
  const std::uint64_t rounds = n_eps_(epsilon);
  if (rounds == 0) {
    throw ContractError("RoundsModel: cost function returned 0 for epsilon " +
                        epsilon.str());
  }
  return rounds;
}

}  // namespace leadelect
