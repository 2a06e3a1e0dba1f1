#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace eomsim {

/// Run log: counts per message kind, keeps the first `max_messages` texts.
class Diagnostics {
public:
  explicit Diagnostics(std::size_t max_messages = 200) : max_messages_(max_messages) {}

  void note(const std::string& kind, std::string message) {
    ++counts_[kind];
    if (messages_.size() < max_messages_) messages_.push_back(kind + ": " + std::move(message));
  }

  std::size_t count(const std::string& kind) const {
    auto it = counts_.find(kind);
    return it == counts_.end() ? 0 : it->second;
  }

  const std::map<std::string, std::size_t>& counts() const noexcept { return counts_; }
  const std::vector<std::string>& messages() const noexcept { return messages_; }

private:
  std::size_t max_messages_;
  std::map<std::string, std::size_t> counts_;
  std::vector<std::string> messages_;
};

}  // namespace eomsim
