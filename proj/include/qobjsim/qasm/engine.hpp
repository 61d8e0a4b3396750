#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qobjsim/common/cancel.hpp"
#include "qobjsim/model/types.hpp"
#include "qobjsim/qasm/gates.hpp"
#include "qobjsim/qasm/statevector.hpp"

namespace qobjsim::qasm {

class EngineError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using qobjsim::RunCancelled;

/// Classical side of the machine: slow memory read out at the end of the
/// experiment and fast registers driving conditionals.
struct ClassicalState {
  std::vector<uint8_t> memory;
  std::vector<uint8_t> registers;

  uint64_t register_value() const;
};

struct RunContext {
  int n_qubits = -1;  // -1 derives the width from the experiment
  long long shots = 1;
  uint64_t seed = 0;
  size_t experiment_index = 0;
  long long memory_slots = 0;
  long long n_registers = 0;
  std::map<std::string, ParsedGateDef> defs;
  /// Monte-Carlo X insertion probability applied per data qubit after each
  /// run of consecutive gates.
  double bit_flip_probability = 0.0;
  std::function<bool()> cancelled;
};

/// Execute a QASM experiment shot by shot; returns counts, per-shot memory
/// and any snapshots taken.
model::ExperimentResult run_experiment(const model::Experiment& exp, const RunContext& ctx,
                                       std::vector<std::string>* warnings = nullptr);

/// Final unitary of a measurement-free circuit.
Matrix run_unitary(const model::Experiment& exp, int n_qubits,
                   const std::map<std::string, ParsedGateDef>& defs);

/// Derive the qubit count (max referenced index + 1).
int experiment_width(const model::Experiment& exp);

/// Parse every gate_config qasm_def of a backend into an expansion table.
std::map<std::string, ParsedGateDef> build_def_table(
    const std::vector<model::GateConfig>& gates);

}  // namespace qobjsim::qasm
