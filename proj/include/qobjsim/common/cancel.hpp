#pragma once

#include <stdexcept>

namespace qobjsim {

/// Raised between shots when a caller's cancel callback fires; the job
/// service maps it onto the CANCELLED state.
class RunCancelled : public std::runtime_error {
public:
  RunCancelled() : std::runtime_error("run cancelled") {}
};

}  // namespace qobjsim
