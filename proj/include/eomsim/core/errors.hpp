#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eomsim {

/// Missing or inconsistent configuration (e.g. a fuel without a price).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mismatched input data (series lengths, CSV schema).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A scenario transform that cannot be applied to the given fleet.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation called on a unit that does not support it.
class DomainError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Internal contract broken; indicates an engine bug, not bad input.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Aggregated input validation failure raised before a run starts.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::vector<std::string> items)
      : std::runtime_error(join(items)), items_(std::move(items)) {}

  const std::vector<std::string>& items() const noexcept { return items_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "input validation failed:";
    for (const auto& item : items) {
      out += "\n  - ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> items_;
};

}  // namespace eomsim
