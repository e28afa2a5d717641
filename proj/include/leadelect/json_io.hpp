#pragma once

#include <string>

#include <json.hpp>

#include "leadelect/analysis.hpp"
#include "leadelect/protocol.hpp"
#include "leadelect/simulator.hpp"

namespace leadelect {

// Canonical tree record: {"type":"leaf","player":p} or
// {"type":"match","q":"num/den","epsilon_prime":"num/den","left":..,"right":..}.
// Rationals cross this boundary as "num/den" strings only; round-trips are
// exact.
nlohmann::json tree_to_json(const ProtocolTree& tree);
ProtocolTree tree_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const SimulationResult& result);
SimulationResult result_from_json(const nlohmann::json& j);

nlohmann::json agreement_to_json(const Agreement& agreement);

// FNV-1a over the canonical tree serialization, as a hex string. Ties a
// SimulationResult to the AnalysisReport of the same tree.
std::string tree_fingerprint(const ProtocolTree& tree);

}  // namespace leadelect
