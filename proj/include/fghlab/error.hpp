#pragma once

#include <stdexcept>
#include <string>

namespace fghlab {

// Base for every input-level failure the library reports. Internal
// invariant breaks are std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fghlab
