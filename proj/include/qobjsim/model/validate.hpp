#pragma once

#include <string>
#include <vector>

#include "qobjsim/model/types.hpp"

namespace qobjsim::model {

struct Violation {
  enum class Severity { Error, Warning };
  std::string path;  // JSON pointer into the validated document
  std::string message;
  Severity severity = Severity::Error;
};

struct ValidationReport {
  std::vector<Violation> violations;

  void error(std::string path, std::string message) {
    violations.push_back({std::move(path), std::move(message), Violation::Severity::Error});
  }
  void warning(std::string path, std::string message) {
    violations.push_back({std::move(path), std::move(message), Violation::Severity::Warning});
  }

  bool passed() const;
  size_t error_count() const;
  Json to_json() const;
};

struct ValidateOptions {
  // Strict mode upgrades advisory findings (meas_map splits, level-0 single
  // shot returns) to errors.
  bool strict = false;
};

/// Check a Qobj against the backend it is destined for. Violations are data;
/// an empty report means the job is executable.
ValidationReport validate_qobj(const Qobj& q, const BackendConfiguration& cfg,
                               const PulseDefaults& defaults,
                               const ValidateOptions& opts = {});

/// Structural invariants of a configuration document on its own.
ValidationReport validate_backend_configuration(const BackendConfiguration& cfg);

/// Cross checks between a configuration and its defaults document.
ValidationReport validate_pulse_defaults(const PulseDefaults& d,
                                         const BackendConfiguration& cfg);

/// Properties are checked against the owning configuration's gate set.
ValidationReport validate_backend_properties(const BackendProperties& p,
                                             const BackendConfiguration& cfg);

}  // namespace qobjsim::model
