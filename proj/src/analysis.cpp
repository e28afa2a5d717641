#include "leadelect/analysis.hpp"

#include <algorithm>

#include "leadelect/errors.hpp"
#include "leadelect/json_io.hpp"

namespace leadelect {

namespace {

using Node = ProtocolTree::Node;

void check_valid(const ProtocolTree& tree) {
  std::vector<PlayerId> players = leaf_players(tree);
  if (static_cast<int>(players.size()) != tree.player_count()) {
    throw ContractError("analysis: leaf count does not match player count");
  }
  std::vector<PlayerId> sorted = players;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i + 1) {
      throw ContractError(
          "analysis: leaves must hold players 1..n exactly once");
    }
  }
}

Rational side_share(const Node& match, bool on_left) {
  // Every path factor must be a genuine probability.
  const Rational& q = match.spec->q();
  return on_left ? q : Rational(1) - q;
}

void fill_products(const Node& node, const Rational& honest_acc,
                   const Rational& worst_acc, std::vector<Rational>& honest,
                   std::vector<Rational>& worst) {
  if (node.is_leaf()) {
    honest[static_cast<std::size_t>(node.player - 1)] = honest_acc;
    worst[static_cast<std::size_t>(node.player - 1)] = worst_acc;
    return;
  }
  for (const bool on_left : {true, false}) {
    const Rational share = side_share(node, on_left);
    if (share.sign() <= 0 || share >= Rational(1)) {
      throw ContractError("analysis: path share must lie in (0,1)");
    }
    const Rational guarded = share - node.spec->epsilon();
    // A factor at or below zero means the budget destroyed this guarantee;
    // the product is reported as 0 and verify_honest_bound flags it.
    const Rational worst_factor = max(guarded, Rational(0));
    fill_products(on_left ? *node.left : *node.right, honest_acc * share,
                  worst_acc * worst_factor, honest, worst);
  }
}

void analyze_products(const ProtocolTree& tree, std::vector<Rational>& honest,
                      std::vector<Rational>& worst) {
  check_valid(tree);
  const auto n = static_cast<std::size_t>(tree.player_count());
  honest.assign(n, Rational(0));
  worst.assign(n, Rational(0));
  fill_products(tree.root(), Rational(1), Rational(1), honest, worst);
}

StructuralCounts count_node(const Node& node) {
  if (node.is_leaf()) return {};
  const StructuralCounts left = count_node(*node.left);
  const StructuralCounts right = count_node(*node.right);
  StructuralCounts out;
  out.match_count = 1 + left.match_count + right.match_count;
  out.depth = 1 + std::max(left.depth, right.depth);
  out.unbalanced_count = (node.spec->is_balanced() ? 0 : 1) +
                         left.unbalanced_count + right.unbalanced_count;
  return out;
}

RoundsAccount rounds_node(const Node& node, const RoundsModel& model,
                          const std::optional<Rational>& override_eps) {
  if (node.is_leaf()) return {};
  const RoundsAccount left = rounds_node(*node.left, model, override_eps);
  const RoundsAccount right = rounds_node(*node.right, model, override_eps);
  const Rational eps = override_eps.value_or(node.spec->epsilon());
  const std::uint64_t here = plan_rounds(node.spec->q(), eps, model);
  return {here + left.total + right.total,
          here + std::max(left.critical_path, right.critical_path)};
}

// The uniform per-flip budget of a built tree; 0 for a flipless tree.
Rational tree_epsilon_prime(const ProtocolTree& tree) {
  return tree.root().is_leaf() ? Rational(0) : tree.root().spec->epsilon();
}

}  // namespace

std::vector<Rational> all_honest_probabilities(const ProtocolTree& tree) {
  std::vector<Rational> honest, worst;
  analyze_products(tree, honest, worst);
  return honest;
}

std::vector<Rational> honest_worst_case_all(const ProtocolTree& tree) {
  std::vector<Rational> honest, worst;
  analyze_products(tree, honest, worst);
  return worst;
}

Rational honest_worst_case(const ProtocolTree& tree, PlayerId player) {
  if (player < 1 || player > tree.player_count()) {
    throw ContractError("honest_worst_case: no such player");
  }
  return honest_worst_case_all(tree)[static_cast<std::size_t>(player - 1)];
}

Rational coalition_upper_bound(const ProtocolTree& tree, PlayerId player) {
  return Rational(1) - honest_worst_case(tree, player);
}

StructuralCounts structural_counts(const ProtocolTree& tree) {
  check_valid(tree);
  return count_node(tree.root());
}

RoundsAccount total_rounds(const ProtocolTree& tree,
                           const RoundsModel& rounds_model,
                           std::optional<Rational> epsilon_override) {
  check_valid(tree);
  return rounds_node(tree.root(), rounds_model, epsilon_override);
}

BoundCheck verify_honest_bound(const ProtocolTree& tree,
                               const Rational& epsilon) {
  const std::vector<Rational> worst = honest_worst_case_all(tree);
  const Rational bound =
      Rational(1, tree.player_count()) - epsilon;

  BoundCheck check;
  bool first = true;
  for (std::size_t i = 0; i < worst.size(); ++i) {
    const Rational slack = worst[i] - bound;
    if (first || slack < check.margin) {
      check.margin = slack;
      if (slack.sign() < 0) check.violator = static_cast<PlayerId>(i + 1);
      first = false;
    }
  }
  check.passed = check.margin.sign() >= 0;
  if (check.passed) check.violator.reset();
  return check;
}

AnalysisReport analyze(const ProtocolTree& tree,
                       const RoundsModel& rounds_model) {
  AnalysisReport report;
  report.n = tree.player_count();
  analyze_products(tree, report.all_honest, report.honest_worst_case);

  Rational honest_sum(0);
  report.coalition_upper_bound.reserve(report.all_honest.size());
  for (std::size_t i = 0; i < report.all_honest.size(); ++i) {
    honest_sum += report.all_honest[i];
    if (report.honest_worst_case[i] > report.all_honest[i]) {
      throw ContractError("analysis: worst case exceeded honest probability");
    }
    report.coalition_upper_bound.push_back(Rational(1) -
                                           report.honest_worst_case[i]);
  }
  if (honest_sum != Rational(1)) {
    throw ContractError("analysis: honest probabilities must sum to 1");
  }

  const StructuralCounts counts = structural_counts(tree);
  report.match_count = counts.match_count;
  report.depth = counts.depth;
  report.unbalanced_count = counts.unbalanced_count;

  const RoundsAccount rounds = total_rounds(tree, rounds_model);
  report.total_rounds = rounds.total;
  report.critical_path_rounds = rounds.critical_path;

  report.epsilon_prime_used = tree_epsilon_prime(tree);
  report.tree_fingerprint = tree_fingerprint(tree);
  return report;
}

}  // namespace leadelect
