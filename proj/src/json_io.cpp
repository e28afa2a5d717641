#include "leadelect/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

#include "leadelect/errors.hpp"

namespace leadelect {

namespace {

using Node = ProtocolTree::Node;
using nlohmann::json;

json node_to_json(const Node& node) {
  if (node.is_leaf()) {
    return json{{"type", "leaf"}, {"player", node.player}};
  }
  return json{{"type", "match"},
              {"q", node.spec->q().str()},
              {"epsilon_prime", node.spec->epsilon().str()},
              {"left", node_to_json(*node.left)},
              {"right", node_to_json(*node.right)}};
}

std::unique_ptr<Node> node_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "leaf") {
    return ProtocolTree::leaf(j.at("player").get<int>());
  }
  if (type == "match") {
    return ProtocolTree::match(
        node_from_json(j.at("left")), node_from_json(j.at("right")),
        FlipSpec(Rational::from_string(j.at("q").get<std::string>()),
                 Rational::from_string(
                     j.at("epsilon_prime").get<std::string>())));
  }
  throw std::invalid_argument("tree node type must be 'leaf' or 'match'");
}

json rationals_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const Rational& v : values) out.push_back(v.str());
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    out.push_back(Rational::from_string(item.get<std::string>()));
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace

json tree_to_json(const ProtocolTree& tree) {
  return node_to_json(tree.root());
}

ProtocolTree tree_from_json(const json& j) {
  auto root = node_from_json(j);
  std::vector<PlayerId> players;
  // Player count comes from the leaves; analysis re-validates the 1..n set.
  struct Walk {
    static void leaves(const Node& node, std::vector<PlayerId>& out) {
      if (node.is_leaf()) {
        out.push_back(node.player);
        return;
      }
      leaves(*node.left, out);
      leaves(*node.right, out);
    }
  };
  Walk::leaves(*root, players);
  return ProtocolTree(std::move(root), static_cast<int>(players.size()));
}

json report_to_json(const AnalysisReport& report) {
  return json{{"n", report.n},
              {"all_honest", rationals_to_json(report.all_honest)},
              {"honest_worst_case", rationals_to_json(report.honest_worst_case)},
              {"coalition_upper_bound",
               rationals_to_json(report.coalition_upper_bound)},
              {"match_count", report.match_count},
              {"depth", report.depth},
              {"unbalanced_count", report.unbalanced_count},
              {"total_rounds", report.total_rounds},
              {"critical_path_rounds", report.critical_path_rounds},
              {"epsilon_prime", report.epsilon_prime_used.str()},
              {"tree_fingerprint", report.tree_fingerprint}};
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport report;
  report.n = j.at("n").get<int>();
  report.all_honest = rationals_from_json(j.at("all_honest"));
  report.honest_worst_case = rationals_from_json(j.at("honest_worst_case"));
  report.coalition_upper_bound =
      rationals_from_json(j.at("coalition_upper_bound"));
  report.match_count = j.at("match_count").get<std::int64_t>();
  report.depth = j.at("depth").get<std::int64_t>();
  report.unbalanced_count = j.at("unbalanced_count").get<std::int64_t>();
  report.total_rounds = j.at("total_rounds").get<std::uint64_t>();
  report.critical_path_rounds =
      j.at("critical_path_rounds").get<std::uint64_t>();
  report.epsilon_prime_used =
      Rational::from_string(j.at("epsilon_prime").get<std::string>());
  report.tree_fingerprint = j.at("tree_fingerprint").get<std::string>();
  return report;
}

json result_to_json(const SimulationResult& result) {
  json j{{"trials", result.trials},
         {"seed", result.seed},
         {"wins", result.wins},
         {"estimated_probability", result.estimated_probability},
         {"standard_error", result.standard_error},
         {"honest", result.honest},
         {"tree_fingerprint", result.tree_fingerprint}};
  j["coalition_target"] = result.coalition_target
                              ? json(*result.coalition_target)
                              : json(nullptr);
  return j;
}

SimulationResult result_from_json(const json& j) {
  SimulationResult result;
  result.trials = j.at("trials").get<std::uint64_t>();
  result.seed = j.at("seed").get<std::uint64_t>();
  result.wins = j.at("wins").get<std::vector<std::uint64_t>>();
  result.estimated_probability =
      j.at("estimated_probability").get<std::vector<double>>();
  result.standard_error = j.at("standard_error").get<std::vector<double>>();
  result.honest = j.at("honest").get<std::vector<PlayerId>>();
  if (!j.at("coalition_target").is_null()) {
    result.coalition_target = j.at("coalition_target").get<PlayerId>();
  }
  result.tree_fingerprint = j.at("tree_fingerprint").get<std::string>();
  return result;
}

json agreement_to_json(const Agreement& agreement) {
  return json{{"player", agreement.player},
              {"exact", agreement.exact.str()},
              {"estimate", agreement.estimate},
              {"standard_error", agreement.standard_error},
              {"z", agreement.z},
              {"passed", agreement.passed}};
}

std::string tree_fingerprint(const ProtocolTree& tree) {
  const std::uint64_t hash = fnv1a64(tree_to_json(tree).dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace leadelect
