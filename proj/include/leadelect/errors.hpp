#pragma once

#include <stdexcept>
#include <string>

namespace leadelect {

// Thrown when an operation is asked to construct something the flip/protocol
// contracts forbid (invalid spec, degenerate plan, bad builder input).
class ConstructionRejected : public std::invalid_argument {
public:
  explicit ConstructionRejected(const std::string& what)
      : std::invalid_argument(what) {}
};

// Thrown when a caller violates an operation's precondition.
class ContractError : public std::logic_error {
public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace leadelect
