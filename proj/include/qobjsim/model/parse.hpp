#pragma once

#include <string>

#include "qobjsim/model/types.hpp"

namespace qobjsim::model {

/// Context an instruction list is decoded in. The reserved names differ
/// between OpenQASM and OpenPulse experiments, and cmd_def sequences allow
/// "PX" parameter tokens in numeric fields.
struct InstructionContext {
  QobjType type = QobjType::QASM;
  bool allow_param_tokens = false;
  std::vector<ParamSlot>* param_slots = nullptr;
  size_t instruction_index = 0;
};

Qobj parse_qobj(const std::string& bytes, const ParseOptions& opts = {},
                ParseLog* log = nullptr);
Qobj parse_qobj(const Json& j, const ParseOptions& opts = {}, ParseLog* log = nullptr);

Instruction parse_instruction(const Json& j, const std::string& path,
                              InstructionContext& ctx, const ParseOptions& opts,
                              ParseLog* log);

UserConfig parse_user_config(const Json& j, const std::string& path,
                             const ParseOptions& opts, ParseLog* log);

BackendConfiguration parse_backend_configuration(const Json& j, const ParseOptions& opts = {},
                                                 ParseLog* log = nullptr);
BackendProperties parse_backend_properties(const Json& j, const ParseOptions& opts = {},
                                           ParseLog* log = nullptr);
BackendStatus parse_backend_status(const Json& j, const ParseOptions& opts = {},
                                   ParseLog* log = nullptr);
PulseDefaults parse_pulse_defaults(const Json& j, const ParseOptions& opts = {},
                                   ParseLog* log = nullptr);
HamiltonianDict parse_hamiltonian_dict(const Json& j, const std::string& path = "",
                                       const ParseOptions& opts = {}, ParseLog* log = nullptr);
GateConfig parse_gate_config(const Json& j, const std::string& path = "",
                             const ParseOptions& opts = {}, ParseLog* log = nullptr);
NduvStruct parse_nduv(const Json& j, const std::string& path = "",
                      const ParseOptions& opts = {}, ParseLog* log = nullptr);
PulseLibEntry parse_pulse_lib_entry(const Json& j, const std::string& path = "",
                                    const ParseOptions& opts = {}, ParseLog* log = nullptr);
std::vector<PulseLibEntry> parse_pulse_library(const Json& j, const std::string& path = "",
                                               const ParseOptions& opts = {},
                                               ParseLog* log = nullptr);
KernelSpec parse_kernel_spec(const Json& j, const std::string& path = "",
                             const ParseOptions& opts = {}, ParseLog* log = nullptr);
CmdDefEntry parse_cmd_def_entry(const Json& j, const std::string& path = "",
                                const ParseOptions& opts = {}, ParseLog* log = nullptr);
std::vector<CmdDefEntry> parse_cmd_def(const Json& j, const std::string& path = "",
                                       const ParseOptions& opts = {}, ParseLog* log = nullptr);
JobStatus parse_job_status(const Json& j, const ParseOptions& opts = {},
                           ParseLog* log = nullptr);
ResultDocument parse_result_document(const Json& j, const ParseOptions& opts = {},
                                     ParseLog* log = nullptr);
ExperimentResult parse_experiment_result(const Json& j, const std::string& path = "",
                                         const ParseOptions& opts = {},
                                         ParseLog* log = nullptr);

}  // namespace qobjsim::model
