#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qobjsim/common/rng.hpp"
#include "qobjsim/ham/evaluate.hpp"
#include "qobjsim/model/types.hpp"
#include "qobjsim/pulse/timeline.hpp"

namespace qobjsim::pulse {

class PulseError : public std::runtime_error {
public:
  PulseError(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct PulseRunContext {
  ham::EvaluatedHamiltonian hamiltonian;
  double dt = 1.0;           // ns per input sample
  double dtm = 1.0;          // ns per level-0 output sample
  double drive_scale = 1.0;  // rad/ns at unit amplitude
  double iq_noise_sigma = 0.0;
  long long shots = 1;
  uint64_t seed = 0;
  size_t experiment_index = 0;
  int meas_level = 2;
  std::string meas_return = "single";
  long long memory_slots = 0;
  long long memory_slot_size = 0;  // required at level 0
  long long n_registers = 0;
  int substeps = 1;
  std::vector<double> qubit_lo_freq;  // GHz
  std::vector<double> meas_lo_freq;   // GHz
  std::vector<double> u_lo_freq;      // GHz, resolved from u_channel_lo
  const model::PulseDefaults* defaults = nullptr;
  const std::vector<model::PulseLibEntry>* user_library = nullptr;
  std::function<bool()> cancelled;
};

/// Per-shot, per-memory-slot measurement pipeline output.
struct SlotRecord {
  bool filled = false;
  std::vector<Complex> level0;
  Complex level1{0.0, 0.0};
  uint8_t bit = 0;
};

struct ShotOutcome {
  Eigen::VectorXcd final_state;  // reported in the accumulated drive frame
  std::vector<SlotRecord> slots;
  std::map<model::Channel, std::vector<Complex>> waveforms;
  Json snapshots = Json::object();
};

/// Executes one PULSE experiment: walks the channel timelines sample by
/// sample, propagates under the rotating-frame Hamiltonian, services
/// acquisitions and assembles the level-dependent output.
class PulseExecutor {
public:
  PulseExecutor(const model::Experiment& exp, const PulseRunContext& ctx);

  long long end_time() const { return t_end_; }

  ShotOutcome run_shot(long long shot, bool record_snapshots = false) const;

  model::ExperimentResult run(std::vector<std::string>* warnings = nullptr) const;

private:
  struct DriveTerm {
    Eigen::MatrixXcd lowering;  // strict upper triangle of the coupling
    double detuning = 0.0;      // rad/ns, lo minus frame frequency
  };

  struct PendingAcquire {
    model::Acquire acquire;
    size_t list_index = 0;
  };

  struct ClassicalOp {
    model::Instruction op;  // Bfunc or Copy
    long long anchor = 0;   // completion time of the preceding acquire
    size_t list_index = 0;
  };

  struct SnapshotAt {
    std::string label;
    std::string type;
    long long t0 = 0;
  };

  const model::Experiment& exp_;
  const PulseRunContext& ctx_;
  std::map<model::Channel, ChannelTimeline> timelines_;
  std::vector<PendingAcquire> acquires_;
  std::vector<ClassicalOp> classical_ops_;
  std::vector<SnapshotAt> snapshots_;
  std::map<model::Channel, DriveTerm> drive_terms_;
  std::vector<double> frame_diagonal_;  // rad/ns per basis state
  bool static_rot_nonzero_ = false;     // anything left after the frame shift
  long long t_end_ = 0;
  long long dim_ = 1;

  double channel_lo_ghz(const model::Channel& ch) const;
};

/// Shape the per-shot slot records into the wire-form ExpData for the
/// configured measurement level and return mode.
model::ExpData assemble_pulse_result(const std::vector<std::vector<SlotRecord>>& shots_slots,
                                     int meas_level, const std::string& meas_return,
                                     long long memory_slots, long long memory_slot_size);

model::ExperimentResult run_pulse_experiment(const model::Experiment& exp,
                                             const PulseRunContext& ctx,
                                             std::vector<std::string>* warnings = nullptr);

}  // namespace qobjsim::pulse
