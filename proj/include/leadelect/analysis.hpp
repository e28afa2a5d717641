#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leadelect/protocol.hpp"
#include "leadelect/rational.hpp"
#include "leadelect/unbalanced.hpp"

namespace leadelect {

// Exact per-player evaluation of a protocol tree. Vectors are indexed by
// player - 1. Rationals never pass through floating point.
struct AnalysisReport {
  int n = 0;
  std::vector<Rational> all_honest;
  std::vector<Rational> honest_worst_case;
  std::vector<Rational> coalition_upper_bound;
  std::int64_t match_count = 0;
  std::int64_t depth = 0;
  std::int64_t unbalanced_count = 0;
  std::uint64_t total_rounds = 0;
  std::uint64_t critical_path_rounds = 0;
  Rational epsilon_prime_used;
  std::string tree_fingerprint;
};

// Every player's winning probability when all play honestly: the product of
// its side's q-share along the leaf-to-root path. Epsilon plays no part.
std::vector<Rational> all_honest_probabilities(const ProtocolTree& tree);

// Guaranteed winning probability for one player when every other player
// cheats in the worst coalition: the path product of (side share - node
// epsilon), where a factor that has been driven to or below zero collapses
// the guarantee to 0.
Rational honest_worst_case(const ProtocolTree& tree, PlayerId player);
std::vector<Rational> honest_worst_case_all(const ProtocolTree& tree);

Rational coalition_upper_bound(const ProtocolTree& tree, PlayerId player);

struct StructuralCounts {
  std::int64_t match_count = 0;
  std::int64_t depth = 0;             // max matches on a leaf-to-root path
  std::int64_t unbalanced_count = 0;  // matches with q != 1/2
};

StructuralCounts structural_counts(const ProtocolTree& tree);

struct RoundsAccount {
  std::uint64_t total = 0;
  // Matches at the same level run simultaneously, so the wall-clock cost is
  // the heaviest root-to-leaf accumulation, not the sum.
  std::uint64_t critical_path = 0;
};

// Sums plan_rounds over every match. When epsilon_override is given it is
// used for every node in place of the node's own budget.
RoundsAccount total_rounds(const ProtocolTree& tree,
                           const RoundsModel& rounds_model,
                           std::optional<Rational> epsilon_override = {});

struct BoundCheck {
  bool passed = true;
  std::optional<PlayerId> violator;
  // Slack min(honest_worst_case) - (1/n - epsilon): negative on failure.
  Rational margin;
};

// Exact check that every player keeps at least 1/n - epsilon against the
// worst coalition.
BoundCheck verify_honest_bound(const ProtocolTree& tree,
                               const Rational& epsilon);

AnalysisReport analyze(const ProtocolTree& tree,
                       const RoundsModel& rounds_model = RoundsModel::unit());

}  // namespace leadelect
