#include "leadelect/protocol.hpp"

#include <bit>

#include "leadelect/errors.hpp"

namespace leadelect {

namespace {

// Builders validate the favored side of every node (q - eps' > 0). The
// unfavored side can legitimately lose its guarantee when the budget is too
// coarse for a lopsided q; analysis clamps that to 0 and verify_honest_bound
// reports it, which keeps construction usable as a diagnostic tool.
FlipSpec node_spec(const Rational& q, const Rational& eps_prime,
                   const std::string& where) {
  FlipSpec spec(q, eps_prime);
  if (spec.guarantee(Party::first).sign() <= 0) {
    throw ConstructionRejected("epsilon budget " + eps_prime.str() +
                               " destroys the favored side of " + where +
                               " (q=" + q.str() + ")");
  }
  return spec;
}

// Perfect balanced tournament over players [first, first + count), count a
// power of two.
std::unique_ptr<ProtocolTree::Node> build_tournament(PlayerId first, int count,
                                                     const Rational& eps_prime) {
  if (count == 1) return ProtocolTree::leaf(first);
  const int half = count / 2;
  return ProtocolTree::match(
      build_tournament(first, half, eps_prime),
      build_tournament(first + half, count - half, eps_prime),
      node_spec(Rational(1, 2), eps_prime, "tournament match"));
}

std::unique_ptr<ProtocolTree::Node> build_recursive_node(
    PlayerId first, int count, const Rational& eps_prime) {
  if (count == 1) return ProtocolTree::leaf(first);
  const int k = std::bit_width(static_cast<unsigned>(count)) - 1;
  const int block = 1 << k;
  if (block == count) return build_tournament(first, count, eps_prime);
  return ProtocolTree::match(
      build_tournament(first, block, eps_prime),
      build_recursive_node(first + block, count - block, eps_prime),
      node_spec(Rational(block, count), eps_prime,
                "join over " + std::to_string(count) + " players"));
}

void collect_leaves(const ProtocolTree::Node& node,
                    std::vector<PlayerId>& out) {
  if (node.is_leaf()) {
    out.push_back(node.player);
    return;
  }
  collect_leaves(*node.left, out);
  collect_leaves(*node.right, out);
}

void require_overall_epsilon(const Rational& epsilon) {
  if (epsilon.sign() <= 0 || epsilon >= Rational(1)) {
    throw ConstructionRejected("overall epsilon must lie in (0,1), got " +
                               epsilon.str());
  }
}

}  // namespace

ProtocolTree::ProtocolTree(std::unique_ptr<Node> root, int player_count)
    : root_(std::move(root)), player_count_(player_count) {
  if (!root_ || player_count_ < 1) {
    throw ContractError("ProtocolTree: empty tree");
  }
}

std::unique_ptr<ProtocolTree::Node> ProtocolTree::leaf(PlayerId player) {
  if (player < 1) {
    throw ContractError("ProtocolTree: player indices are 1-based");
  }
  auto node = std::make_unique<Node>();
  node->player = player;
  return node;
}

std::unique_ptr<ProtocolTree::Node> ProtocolTree::match(
    std::unique_ptr<Node> left, std::unique_ptr<Node> right, FlipSpec spec) {
  if (!left || !right) {
    throw ContractError("ProtocolTree: match requires two subtrees");
  }
  auto node = std::make_unique<Node>();
  node->spec = std::move(spec);
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

std::string variant_name(ProtocolVariant variant) {
  switch (variant) {
    case ProtocolVariant::linear: return "linear";
    case ProtocolVariant::recursive: return "recursive";
    case ProtocolVariant::three: return "three";
    case ProtocolVariant::seven: return "seven";
  }
  throw ContractError("variant_name: unknown variant");
}

ProtocolVariant variant_from_name(const std::string& name) {
  if (name == "linear") return ProtocolVariant::linear;
  if (name == "recursive") return ProtocolVariant::recursive;
  if (name == "three") return ProtocolVariant::three;
  if (name == "seven") return ProtocolVariant::seven;
  throw std::invalid_argument("unknown protocol variant '" + name + "'");
}

Rational epsilon_prime(ProtocolVariant variant, int n, const Rational& epsilon) {
  if (epsilon.sign() <= 0) {
    throw ConstructionRejected("epsilon_prime: epsilon must be positive");
  }
  if (n < 2) {
    throw ConstructionRejected("epsilon_prime: n must be >= 2");
  }
  switch (variant) {
    case ProtocolVariant::linear:
      return epsilon / Rational(n);
    case ProtocolVariant::recursive: {
      const int ceil_log2_n = std::bit_width(static_cast<unsigned>(n - 1));
      return epsilon / Rational(2 * ceil_log2_n);
    }
    case ProtocolVariant::three:
      if (n != 3) throw ConstructionRejected("three-player variant requires n=3");
      return epsilon / Rational(2);
    case ProtocolVariant::seven:
      if (n != 7) throw ConstructionRejected("seven-player variant requires n=7");
      return epsilon / Rational(21);
  }
  throw ContractError("epsilon_prime: unknown variant");
}

ProtocolTree build_linear(int n, const Rational& epsilon) {
  if (n < 2) {
    throw ConstructionRejected("build_linear: n must be >= 2");
  }
  require_overall_epsilon(epsilon);
  const Rational eps_prime = epsilon_prime(ProtocolVariant::linear, n, epsilon);

  auto tree = ProtocolTree::match(
      ProtocolTree::leaf(1), ProtocolTree::leaf(2),
      node_spec(Rational(1, 2), eps_prime, "match A1-A2"));
  for (int i = 3; i <= n; ++i) {
    tree = ProtocolTree::match(
        std::move(tree), ProtocolTree::leaf(i),
        node_spec(Rational(i - 1, i), eps_prime,
                  "match vs A" + std::to_string(i)));
  }
  return ProtocolTree(std::move(tree), n);
}

ProtocolTree build_recursive(int n, const Rational& epsilon) {
  if (n < 1) {
    throw ConstructionRejected("build_recursive: n must be >= 1");
  }
  if (n == 1) {
    return ProtocolTree(ProtocolTree::leaf(1), 1);  // that player is leader
  }
  require_overall_epsilon(epsilon);
  const Rational eps_prime =
      epsilon_prime(ProtocolVariant::recursive, n, epsilon);
  return ProtocolTree(build_recursive_node(1, n, eps_prime), n);
}

ProtocolTree build_three(const Rational& epsilon) {
  require_overall_epsilon(epsilon);
  const Rational eps_prime = epsilon_prime(ProtocolVariant::three, 3, epsilon);
  auto ab = ProtocolTree::match(
      ProtocolTree::leaf(1), ProtocolTree::leaf(2),
      node_spec(Rational(1, 2), eps_prime, "match A-B"));
  auto root = ProtocolTree::match(
      std::move(ab), ProtocolTree::leaf(3),
      node_spec(Rational(2, 3), eps_prime, "match winner-C"));
  return ProtocolTree(std::move(root), 3);
}

ProtocolTree build_seven(const Rational& epsilon) {
  require_overall_epsilon(epsilon);
  const Rational eps_prime = epsilon_prime(ProtocolVariant::seven, 7, epsilon);
  const Rational half(1, 2);
  auto quad = ProtocolTree::match(
      ProtocolTree::match(ProtocolTree::leaf(1), ProtocolTree::leaf(2),
                          node_spec(half, eps_prime, "match A1-A2")),
      ProtocolTree::match(ProtocolTree::leaf(3), ProtocolTree::leaf(4),
                          node_spec(half, eps_prime, "match A3-A4")),
      node_spec(half, eps_prime, "semifinal"));
  auto trio = ProtocolTree::match(
      ProtocolTree::match(ProtocolTree::leaf(5), ProtocolTree::leaf(6),
                          node_spec(half, eps_prime, "match A5-A6")),
      ProtocolTree::leaf(7),
      node_spec(Rational(2, 3), eps_prime, "match winner-A7"));
  auto root = ProtocolTree::match(
      std::move(quad), std::move(trio),
      node_spec(Rational(4, 7), eps_prime, "final"));
  return ProtocolTree(std::move(root), 7);
}

ProtocolTree build_variant(ProtocolVariant variant, int n,
                           const Rational& epsilon) {
  switch (variant) {
    case ProtocolVariant::linear: return build_linear(n, epsilon);
    case ProtocolVariant::recursive: return build_recursive(n, epsilon);
    case ProtocolVariant::three:
      if (n != 3) throw ConstructionRejected("three-player variant requires n=3");
      return build_three(epsilon);
    case ProtocolVariant::seven:
      if (n != 7) throw ConstructionRejected("seven-player variant requires n=7");
      return build_seven(epsilon);
  }
  throw ContractError("build_variant: unknown variant");
}

namespace {

bool same_shape_node(const ProtocolTree::Node& a, const ProtocolTree::Node& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.player == b.player;
  if (a.spec->q() != b.spec->q()) return false;
  return same_shape_node(*a.left, *b.left) && same_shape_node(*a.right, *b.right);
}

}  // namespace

bool same_shape(const ProtocolTree& a, const ProtocolTree& b) {
  return a.player_count() == b.player_count() &&
         same_shape_node(a.root(), b.root());
}

std::vector<PlayerId> leaf_players(const ProtocolTree& tree) {
  std::vector<PlayerId> out;
  out.reserve(static_cast<std::size_t>(tree.player_count()));
  collect_leaves(tree.root(), out);
  return out;
}

}  // namespace leadelect
