#include "fghlab/report.hpp"

#include <algorithm>

namespace fghlab {

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

void CheckReport::add(std::string name, CheckStatus status, std::string detail) {
  entries.push_back({std::move(name), status, std::move(detail)});
}

std::size_t CheckReport::count(CheckStatus s) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [s](const CheckEntry& e) { return e.status == s; }));
}

}  // namespace fghlab
