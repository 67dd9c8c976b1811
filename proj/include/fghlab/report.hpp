#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fghlab {

enum class CheckStatus { Pass, Fail, Inconclusive };

const char* to_string(CheckStatus s) noexcept;

struct CheckEntry {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  void add(std::string name, CheckStatus status, std::string detail = {});
  std::size_t count(CheckStatus s) const noexcept;
  /// No entry failed. Inconclusive entries do not count against a report.
  bool ok() const noexcept { return count(CheckStatus::Fail) == 0; }
};

}  // namespace fghlab
