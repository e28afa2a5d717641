#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leadelect/analysis.hpp"
#include "leadelect/protocol.hpp"

namespace leadelect {

// Who plays honestly, and whom the cheating coalition is trying to elect.
// Without a target the coalition plays against the designated honest player
// (the lowest-index honest one).
struct StrategyProfile {
  std::vector<PlayerId> honest;
  std::optional<PlayerId> coalition_target;

  static StrategyProfile all_honest(int n);
  static StrategyProfile single_honest(PlayerId player);
};

struct SimulationResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> wins;  // player i at index i-1
  std::vector<double> estimated_probability;
  std::vector<double> standard_error;
  std::vector<PlayerId> honest;  // profile echo, sorted
  std::optional<PlayerId> coalition_target;
  std::string tree_fingerprint;
};

// Monte Carlo execution. Deterministic for fixed (tree, profile, trials,
// seed) under any thread count: trial t draws from an independent stream
// derived from (seed, t), and win counts merge by addition.
//
// simulate() fans trials out over OpenMP threads (threads <= 0 picks the
// runtime default); simulate_serial() is the plain-loop reference the tests
// hold it against.
SimulationResult simulate(const ProtocolTree& tree,
                          const StrategyProfile& profile, std::uint64_t trials,
                          std::uint64_t seed, int threads = 0);
SimulationResult simulate_serial(const ProtocolTree& tree,
                                 const StrategyProfile& profile,
                                 std::uint64_t trials, std::uint64_t seed);

struct Agreement {
  PlayerId player = 0;
  Rational exact;
  double estimate = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool passed = false;
};

// Five-sigma agreement between a sampled estimate and the exact analysis
// value for the matching scenario: an all-honest profile is checked against
// all_honest, a single-honest full-cheat profile against honest_worst_case.
// Throws ContractError when the records come from different trees or the
// profile has no exact counterpart for this player.
Agreement compare_to_exact(const SimulationResult& result,
                           const AnalysisReport& report, PlayerId player);

}  // namespace leadelect
