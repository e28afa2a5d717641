#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leadelect/flip.hpp"
#include "leadelect/rational.hpp"

namespace leadelect {

using PlayerId = int;  // players are 1-based

// Binary match tree over players: leaves are players, internal nodes are
// flips whose q is the probability that the LEFT subtree's winner wins.
class ProtocolTree {
public:
  struct Node {
    PlayerId player = 0;          // set for leaves
    std::optional<FlipSpec> spec;  // set for matches
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;

    bool is_leaf() const { return !spec.has_value(); }
  };

  ProtocolTree(std::unique_ptr<Node> root, int player_count);

  const Node& root() const { return *root_; }
  int player_count() const { return player_count_; }

  static std::unique_ptr<Node> leaf(PlayerId player);
  static std::unique_ptr<Node> match(std::unique_ptr<Node> left,
                                     std::unique_ptr<Node> right,
                                     FlipSpec spec);

private:
  std::unique_ptr<Node> root_;
  int player_count_;
};

enum class ProtocolVariant { linear, recursive, three, seven };

std::string variant_name(ProtocolVariant variant);
ProtocolVariant variant_from_name(const std::string& name);

// Per-flip bias budget for a variant's overall target epsilon:
// linear eps/n, recursive eps/(2*ceil(log2 n)), three eps/2, seven eps/21.
Rational epsilon_prime(ProtocolVariant variant, int n, const Rational& epsilon);

// Left-deep chain: A1 plays A2 at q=1/2, then the standing winner plays A_i
// at q=(i-1)/i.
ProtocolTree build_linear(int n, const Rational& epsilon);

// Tournament over the leading power-of-two block, recursion over the rest,
// joined by a flip at q = 2^k/n. The per-flip budget is fixed once from the
// outermost n and inherited by every level.
ProtocolTree build_recursive(int n, const Rational& epsilon);

ProtocolTree build_three(const Rational& epsilon);
ProtocolTree build_seven(const Rational& epsilon);

ProtocolTree build_variant(ProtocolVariant variant, int n,
                           const Rational& epsilon);

// True when both trees have the same shape and q at every node (epsilon may
// differ).
bool same_shape(const ProtocolTree& a, const ProtocolTree& b);

// Leaf players in left-to-right order.
std::vector<PlayerId> leaf_players(const ProtocolTree& tree);

}  // namespace leadelect
