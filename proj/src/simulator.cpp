#include "leadelect/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "leadelect/errors.hpp"
#include "leadelect/flip.hpp"
#include "leadelect/json_io.hpp"
#include "leadelect/rng.hpp"

namespace leadelect {

namespace {

using Node = ProtocolTree::Node;

struct TrialContext {
  std::vector<char> honest_mask;  // player i at index i
  std::optional<PlayerId> target;
};

PlayerId run_subtree(const Node& node, const TrialContext& ctx,
                     SplitMix64& rng) {
  if (node.is_leaf()) return node.player;
  const PlayerId left = run_subtree(*node.left, ctx, rng);
  const PlayerId right = run_subtree(*node.right, ctx, rng);
  const bool left_honest = ctx.honest_mask[static_cast<std::size_t>(left)] != 0;
  const bool right_honest =
      ctx.honest_mask[static_cast<std::size_t>(right)] != 0;

  std::optional<Party> choice;
  if (!left_honest && !right_honest) {
    // Non-target cheaters are downstream-interchangeable: every later match
    // resolves from its spec and the sides' honesty only. The "higher
    // downstream chance" rule therefore reduces to advancing the coalition
    // target when it is in the pair, with ties going to the lower index.
    if (ctx.target && (left == *ctx.target || right == *ctx.target)) {
      choice = (left == *ctx.target) ? Party::first : Party::second;
    } else {
      choice = (left < right) ? Party::first : Party::second;
    }
  }
  const Outcome outcome =
      resolve_flip(*node.spec, left_honest, right_honest, choice, rng);
  return outcome.winner == Party::first ? left : right;
}

TrialContext make_context(const ProtocolTree& tree,
                          const StrategyProfile& profile) {
  const int n = tree.player_count();
  TrialContext ctx;
  ctx.honest_mask.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const PlayerId p : profile.honest) {
    if (p < 1 || p > n) {
      throw ContractError("simulate: honest player out of range");
    }
    if (ctx.honest_mask[static_cast<std::size_t>(p)]) {
      throw ContractError("simulate: duplicate honest player");
    }
    ctx.honest_mask[static_cast<std::size_t>(p)] = 1;
  }
  if (profile.coalition_target) {
    const PlayerId t = *profile.coalition_target;
    if (t < 1 || t > n) {
      throw ContractError("simulate: coalition target out of range");
    }
    if (ctx.honest_mask[static_cast<std::size_t>(t)]) {
      throw ContractError("simulate: coalition target cannot be honest");
    }
    ctx.target = t;
  }
  return ctx;
}

SimulationResult finalize(const ProtocolTree& tree,
                          const StrategyProfile& profile, std::uint64_t trials,
                          std::uint64_t seed, std::vector<std::uint64_t> wins) {
  SimulationResult result;
  result.trials = trials;
  result.seed = seed;
  result.wins = std::move(wins);
  result.estimated_probability.reserve(result.wins.size());
  result.standard_error.reserve(result.wins.size());
  const auto t = static_cast<double>(trials);
  for (const std::uint64_t w : result.wins) {
    const double p = static_cast<double>(w) / t;
    result.estimated_probability.push_back(p);
    result.standard_error.push_back(std::sqrt(p * (1.0 - p) / t));
  }
  result.honest = profile.honest;
  std::sort(result.honest.begin(), result.honest.end());
  result.coalition_target = profile.coalition_target;
  result.tree_fingerprint = tree_fingerprint(tree);
  return result;
}

}  // namespace

StrategyProfile StrategyProfile::all_honest(int n) {
  StrategyProfile profile;
  profile.honest.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) profile.honest[static_cast<std::size_t>(i)] = i + 1;
  return profile;
}

StrategyProfile StrategyProfile::single_honest(PlayerId player) {
  StrategyProfile profile;
  profile.honest.push_back(player);
  return profile;
}

SimulationResult simulate_serial(const ProtocolTree& tree,
                                 const StrategyProfile& profile,
                                 std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw ContractError("simulate: trials must be positive");
  const TrialContext ctx = make_context(tree, profile);

  std::vector<std::uint64_t> wins(
      static_cast<std::size_t>(tree.player_count()), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, t);
    const PlayerId winner = run_subtree(tree.root(), ctx, rng);
    ++wins[static_cast<std::size_t>(winner - 1)];
  }
  return finalize(tree, profile, trials, seed, std::move(wins));
}

SimulationResult simulate(const ProtocolTree& tree,
                          const StrategyProfile& profile, std::uint64_t trials,
                          std::uint64_t seed, int threads) {
  if (trials == 0) throw ContractError("simulate: trials must be positive");
  const TrialContext ctx = make_context(tree, profile);

  const std::size_t n = static_cast<std::size_t>(tree.player_count());
  std::vector<std::uint64_t> wins(n, 0);
  const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(team)
  {
    std::vector<std::uint64_t> local(n, 0);
#pragma omp for schedule(static)
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
      SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(t));
      const PlayerId winner = run_subtree(tree.root(), ctx, rng);
      ++local[static_cast<std::size_t>(winner - 1)];
    }
#pragma omp critical
    {
      for (std::size_t i = 0; i < n; ++i) wins[i] += local[i];
    }
  }
  return finalize(tree, profile, trials, seed, std::move(wins));
}

Agreement compare_to_exact(const SimulationResult& result,
                           const AnalysisReport& report, PlayerId player) {
  if (result.tree_fingerprint != report.tree_fingerprint) {
    throw ContractError(
        "compare_to_exact: result and report come from different trees");
  }
  if (result.trials == 0) {
    throw ContractError("compare_to_exact: result holds no trials");
  }
  if (player < 1 || player > report.n) {
    throw ContractError("compare_to_exact: no such player");
  }
  const auto idx = static_cast<std::size_t>(player - 1);

  const bool everyone_honest =
      static_cast<int>(result.honest.size()) == report.n;
  const bool single_honest_worst = result.honest.size() == 1 &&
                                   result.honest.front() == player &&
                                   !result.coalition_target.has_value();
  Rational exact;
  if (everyone_honest) {
    exact = report.all_honest[idx];
  } else if (single_honest_worst) {
    exact = report.honest_worst_case[idx];
  } else {
    throw ContractError(
        "compare_to_exact: profile has no exact analysis target for player " +
        std::to_string(player));
  }

  Agreement agreement;
  agreement.player = player;
  agreement.exact = exact;
  agreement.estimate = result.estimated_probability[idx];
  agreement.standard_error = result.standard_error[idx];
  if (agreement.standard_error == 0.0) {
    // The empirical rate is exactly 0 or 1; fall back to exact comparison.
    const bool equal =
        Rational(static_cast<long long>(result.wins[idx])) ==
        exact * Rational(static_cast<long long>(result.trials));
    agreement.z = equal ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    agreement.z =
        (agreement.estimate - exact.to_double()) / agreement.standard_error;
  }
  agreement.passed = std::abs(agreement.z) <= 5.0;
  return agreement;
}

}  // namespace leadelect
