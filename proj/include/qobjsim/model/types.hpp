#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qobjsim/common/json.hpp"

namespace qobjsim::model {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Backend description
// ---------------------------------------------------------------------------

struct GateConfig {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<std::vector<int>> coupling_map;
  std::string qasm_def;
  std::optional<bool> conditional;
  std::optional<std::vector<std::vector<int>>> latency_map;
  std::optional<std::string> description;
  Json extra = Json::object();
};

struct HamiltonianDict {
  std::string h_latex;
  std::vector<std::string> h_str;
  Json vars = Json::object();  // name -> value, order preserved for the wire
  Json osc = Json::object();

  std::map<std::string, double> vars_map() const;
  std::map<std::string, double> osc_map() const;
};

struct UChannelLoTerm {
  int q = 0;
  Complex scale{1.0, 0.0};
};

struct BackendConfiguration {
  std::string backend_name;
  std::string backend_version;
  int n_qubits = 0;  // -1 means "simulator, unbounded"
  std::vector<std::string> basis_gates;
  std::vector<std::pair<int, int>> coupling_map;
  std::vector<GateConfig> gates;
  bool local = true;
  bool simulator = true;
  bool conditional = false;
  bool configurable = false;
  bool open_pulse = false;
  std::optional<long long> n_registers;
  std::optional<std::vector<std::vector<int>>> register_map;

  std::optional<std::string> online_date;
  std::optional<std::string> display_name;
  std::optional<std::string> sample_name;
  std::optional<std::string> description;
  std::optional<std::string> url;
  std::optional<std::vector<std::string>> tags;

  // Pulse extension, present iff open_pulse.
  std::optional<long long> n_uchannels;
  std::optional<HamiltonianDict> hamiltonian;
  std::optional<std::vector<std::vector<UChannelLoTerm>>> u_channel_lo;
  std::optional<std::vector<int>> meas_levels;
  std::optional<std::vector<std::array<double, 2>>> qubit_lo_range;
  std::optional<std::vector<std::array<double, 2>>> meas_lo_range;
  std::optional<double> dt;   // ns
  std::optional<double> dtm;  // ns
  std::optional<std::vector<double>> rep_times;  // us
  std::optional<std::vector<std::vector<int>>> meas_map;
  std::optional<std::vector<std::array<double, 2>>> channel_bandwidth;
  std::optional<std::vector<std::string>> meas_kernels;
  std::optional<std::vector<std::string>> discriminators;
  std::optional<std::vector<std::vector<long long>>> acquisition_latency;
  std::optional<std::vector<std::vector<long long>>> conditional_latency;

  Json extra = Json::object();

  bool bounded_qubits() const { return n_qubits >= 0; }
};

struct NduvStruct {
  std::string name;
  std::string date;
  std::string unit;
  double value = 0.0;
  Json extra = Json::object();
};

struct GateProp {
  std::vector<int> qubits;
  std::string gate;
  std::vector<NduvStruct> parameters;
  Json extra = Json::object();
};

struct BackendProperties {
  std::string backend_name;
  std::string backend_version;
  std::string last_update_date;
  std::vector<GateProp> gates;
  std::vector<std::vector<NduvStruct>> qubits;
  std::vector<NduvStruct> general;
  Json extra = Json::object();
};

struct BackendStatus {
  std::string backend_name;
  std::string backend_version;
  bool operational = true;
  long long pending_jobs = 0;
  std::string status_msg;
  Json extra = Json::object();
};

// ---------------------------------------------------------------------------
// Pulse defaults
// ---------------------------------------------------------------------------

struct PulseLibEntry {
  std::string name;
  std::vector<Complex> samples;
  Json extra = Json::object();
};

struct KernelSpec {
  std::string name;
  std::vector<double> params;
  Json extra = Json::object();
};

using DiscriminatorSpec = KernelSpec;

// ---------------------------------------------------------------------------
// Instructions
// ---------------------------------------------------------------------------

struct Bfunc {
  std::string mask;      // hex literal
  std::string relation;  // "==" or "!="
  std::string val;       // hex literal
  long long reg = 0;
  std::optional<long long> memory;
  // The repetition-code listing writes "register": [2]; we normalize to the
  // scalar but remember the spelling for the wire.
  bool reg_was_list = false;
  Json extra = Json::object();
};

struct Copy {
  long long register_orig = 0;
  std::vector<long long> register_copy;
  Json extra = Json::object();
};

struct Gate {
  std::string name;
  std::vector<long long> qubits;
  std::optional<std::vector<double>> params;
  std::optional<std::vector<std::string>> texparams;
  std::optional<long long> conditional;
  Json extra = Json::object();
};

struct Barrier {
  std::vector<long long> qubits;
  Json extra = Json::object();
};

struct Reset {
  std::vector<long long> qubits;
  Json extra = Json::object();
};

struct Measure {
  std::vector<long long> qubits;
  std::vector<long long> memory;
  std::optional<std::vector<long long>> reg;
  Json extra = Json::object();
};

struct Snapshot {
  std::string label;
  std::string type;
  std::optional<long long> t0;  // pulse experiments only
  Json extra = Json::object();
};

struct DrivePulse {
  std::string name;
  long long t0 = 0;
  std::string ch;
  std::optional<long long> conditional;
  Json extra = Json::object();
};

struct FrameChange {
  long long t0 = 0;
  std::string ch;
  double phase = 0.0;  // may be a parameter slot inside a cmd_def
  std::optional<long long> conditional;
  Json extra = Json::object();
};

struct PersistentValue {
  long long t0 = 0;
  std::string ch;
  Complex val{0.0, 0.0};
  Json extra = Json::object();
};

struct Acquire {
  long long t0 = 0;
  long long duration = 0;
  std::vector<long long> qubits;
  std::vector<long long> memory_slot;
  std::optional<std::vector<long long>> register_slot;
  std::optional<std::vector<KernelSpec>> kernels;
  std::optional<std::vector<DiscriminatorSpec>> discriminators;
  Json extra = Json::object();
};

using Instruction = std::variant<Bfunc, Copy, Gate, Barrier, Reset, Measure, Snapshot,
                                 DrivePulse, FrameChange, PersistentValue, Acquire>;

const char* instruction_name(const Instruction& instr);

// ---------------------------------------------------------------------------
// cmd_def
// ---------------------------------------------------------------------------

/// Location of a "PX" parameter token inside a cmd_def sequence.
struct ParamSlot {
  enum class Field { T0, Duration, Phase };
  size_t instruction = 0;
  Field field = Field::Phase;
  int param = 0;
};

struct CmdDefEntry {
  std::string name;
  std::vector<int> qubits;
  std::vector<Instruction> sequence;
  std::vector<ParamSlot> param_slots;
  // The paper writes the sequence key both as "sequence" and "instructions";
  // keep the spelling we saw for byte-stable output.
  std::string sequence_key = "sequence";
  Json extra = Json::object();

  int max_param_index() const;
};

struct PulseDefaults {
  std::vector<double> qubit_freq_est;  // GHz
  std::vector<double> meas_freq_est;   // GHz
  long long buffer = 0;                // dt units
  std::vector<PulseLibEntry> pulse_library;
  std::vector<CmdDefEntry> cmd_def;
  std::optional<KernelSpec> meas_kernel;
  std::optional<DiscriminatorSpec> discriminator;
  Json extra = Json::object();
};

// ---------------------------------------------------------------------------
// Qobj
// ---------------------------------------------------------------------------

struct UserConfig {
  std::optional<long long> shots;
  std::optional<long long> memory_slots;
  std::optional<long long> seed;
  std::optional<long long> max_credits;

  // Pulse settings.
  std::optional<int> meas_level;
  std::optional<std::vector<PulseLibEntry>> pulse_library;
  std::optional<long long> memory_slot_size;
  std::optional<std::string> meas_return;  // "single" | "avg"
  std::optional<std::vector<double>> qubit_lo_freq;  // GHz
  std::optional<std::vector<double>> meas_lo_freq;   // GHz
  std::optional<double> rep_time;  // us

  Json extra = Json::object();

  /// Per-experiment configs override job-level keys.
  UserConfig overridden_by(const UserConfig& exp) const;
};

enum class QobjType { QASM, PULSE };

const char* to_string(QobjType t);

struct Experiment {
  Json header = Json::object();
  UserConfig config;
  std::vector<Instruction> instructions;
  Json extra = Json::object();
};

struct Qobj {
  std::string qobj_id;
  QobjType type = QobjType::QASM;
  std::string schema_version;
  std::vector<Experiment> experiments;
  Json header = Json::object();
  UserConfig config;
  Json extra = Json::object();
};

// ---------------------------------------------------------------------------
// Job status
// ---------------------------------------------------------------------------

enum class JobState { Error, Queued, Initializing, Running, Cancelled, Done };

const char* to_string(JobState s);
std::optional<JobState> job_state_from_string(const std::string& s);

struct JobStatus {
  std::string job_id;
  JobState status = JobState::Queued;
  std::string status_msg;
  Json extra = Json::object();
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Experiment payload. Shapes depend on experiment type and measurement
/// level, so the fields hold wire-form JSON; the engines build them through
/// the typed helpers in the pulse/qasm modules.
struct ExpData {
  std::optional<Json> counts;       // {"0x0": 10, ...}
  std::optional<Json> memory;       // hex strings or nested sample arrays
  std::optional<Json> statevector;  // [[re, im], ...]
  std::optional<Json> unitary;      // [[[re, im], ...], ...]
  std::optional<Json> snapshots;    // {type: {label: payload}}
  Json extra = Json::object();

  bool empty() const {
    return !counts && !memory && !statevector && !unitary && !snapshots && extra.empty();
  }
};

struct ExperimentResult {
  // "shots" is either a plain count or a [n1, n2] delivery window.
  std::optional<long long> shots;
  std::optional<std::pair<long long, long long>> shots_window;
  std::string status = "DONE";
  bool success = true;
  Json header = Json::object();
  std::optional<long long> seed;
  std::optional<std::string> meas_return;
  ExpData data;
  Json extra = Json::object();
};

struct ResultDocument {
  std::string backend_name;
  std::string backend_version;
  std::string qobj_id;
  std::string job_id;
  std::optional<std::string> date;
  Json header = Json::object();
  std::optional<std::string> status;
  bool success = true;
  std::vector<ExperimentResult> results;
  Json extra = Json::object();
};

}  // namespace qobjsim::model
