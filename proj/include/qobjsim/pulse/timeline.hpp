#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qobjsim/model/channel.hpp"
#include "qobjsim/model/types.hpp"

namespace qobjsim::pulse {

using Complex = std::complex<double>;

/// Schedule failure; `kind` is one of OverlappingPulses, UnknownPulseName,
/// NonMonotoneT0.
class ScheduleError : public std::runtime_error {
public:
  ScheduleError(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct PulseEvent {
  long long t0 = 0;
  std::vector<Complex> samples;
  std::optional<long long> conditional;

  long long end() const { return t0 + static_cast<long long>(samples.size()); }
};

struct FrameChangeEvent {
  long long t = 0;
  double phase = 0.0;
  std::optional<long long> conditional;
};

struct PersistentValueEvent {
  long long t0 = 0;
  Complex val{0.0, 0.0};
  /// Exclusive end: the next pulse/pv on the channel, or the experiment end.
  long long until = -1;
};

struct ChannelTimeline {
  model::Channel channel;
  std::vector<PulseEvent> pulses;             // non-overlapping, sorted by t0
  std::vector<FrameChangeEvent> frame_changes;  // sorted by t
  std::vector<PersistentValueEvent> pvs;      // sorted by t0
  long long end_time = 0;  // last sample-producing event end

  /// Accumulated frame phase for samples starting at t (sum of fc phases
  /// with fc.t <= t). Conditional frame changes count only when `fires`
  /// grants them.
  double phase_at(long long t, const std::function<bool(long long)>& fires) const;

  /// Channel output at t with every conditional granted; the engine walks
  /// conditionals itself, this is the static view used by tests and tools.
  Complex output_at(long long t) const;
};

/// Pulse-name lookup across the user library (first) and default library.
class EffectiveLibrary {
public:
  EffectiveLibrary(const std::vector<model::PulseLibEntry>* user,
                   const std::vector<model::PulseLibEntry>* defaults)
      : user_(user), defaults_(defaults) {}

  const model::PulseLibEntry* find(const std::string& name) const;

private:
  const std::vector<model::PulseLibEntry>* user_;
  const std::vector<model::PulseLibEntry>* defaults_;
};

/// Sort the channel-addressed instructions of a PULSE experiment into
/// per-channel event streams. Instructions must be time ordered; drive
/// pulses on one channel must not overlap.
std::map<model::Channel, ChannelTimeline> build_timelines(
    const std::vector<model::Instruction>& instructions, const EffectiveLibrary& lib);

}  // namespace qobjsim::pulse
