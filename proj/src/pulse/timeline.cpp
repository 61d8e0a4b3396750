#include "qobjsim/pulse/timeline.hpp"

#include <algorithm>

namespace qobjsim::pulse {

const model::PulseLibEntry* EffectiveLibrary::find(const std::string& name) const {
  if (user_) {
    for (const auto& p : *user_) {
      if (p.name == name) return &p;
    }
  }
  if (defaults_) {
    for (const auto& p : *defaults_) {
      if (p.name == name) return &p;
    }
  }
  return nullptr;
}

double ChannelTimeline::phase_at(long long t,
                                 const std::function<bool(long long)>& fires) const {
  double phase = 0.0;
  for (const auto& fc : frame_changes) {
    if (fc.t > t) break;
    if (fc.conditional && fires && !fires(*fc.conditional)) continue;
    phase += fc.phase;
  }
  return phase;
}

Complex ChannelTimeline::output_at(long long t) const {
  Complex raw{0.0, 0.0};
  bool found = false;
  for (const auto& p : pulses) {
    if (t >= p.t0 && t < p.end()) {
      raw = p.samples[static_cast<size_t>(t - p.t0)];
      found = true;
      break;
    }
  }
  if (!found) {
    for (const auto& pv : pvs) {
      if (t >= pv.t0 && (pv.until < 0 || t < pv.until)) raw = pv.val;
    }
  }
  double phase = phase_at(t, nullptr);
  return raw * std::exp(Complex(0, -phase));
}

std::map<model::Channel, ChannelTimeline> build_timelines(
    const std::vector<model::Instruction>& instructions, const EffectiveLibrary& lib) {
  std::map<model::Channel, ChannelTimeline> out;

  auto channel_of = [&](const std::string& id) {
    auto ch = model::Channel::parse(id);
    if (!ch) throw ScheduleError("UnknownChannel", "bad channel id '" + id + "'");
    auto it = out.find(*ch);
    if (it == out.end()) {
      it = out.emplace(*ch, ChannelTimeline{}).first;
      it->second.channel = *ch;
    }
    return it;
  };

  long long clock = 0;
  auto advance_clock = [&clock](long long t0, const char* what) {
    if (t0 < clock) {
      throw ScheduleError("NonMonotoneT0",
                          std::string(what) + " at t0 " + std::to_string(t0) +
                              " appears after an item at " + std::to_string(clock));
    }
    clock = t0;
  };

  for (const auto& instr : instructions) {
    if (const auto* p = std::get_if<model::DrivePulse>(&instr)) {
      advance_clock(p->t0, "pulse");
      const model::PulseLibEntry* entry = lib.find(p->name);
      if (!entry) {
        throw ScheduleError("UnknownPulseName",
                            "pulse '" + p->name + "' not in the effective library");
      }
      auto it = channel_of(p->ch);
      ChannelTimeline& tl = it->second;
      if (!tl.pulses.empty() && p->t0 < tl.pulses.back().end()) {
        throw ScheduleError("OverlappingPulses",
                            "pulse '" + p->name + "' at t0 " + std::to_string(p->t0) +
                                " overlaps the previous pulse on " + p->ch);
      }
      PulseEvent ev;
      ev.t0 = p->t0;
      ev.samples = entry->samples;
      ev.conditional = p->conditional;
      tl.end_time = std::max(tl.end_time, ev.end());
      tl.pulses.push_back(std::move(ev));
    } else if (const auto* f = std::get_if<model::FrameChange>(&instr)) {
      advance_clock(f->t0, "frame change");
      auto it = channel_of(f->ch);
      it->second.frame_changes.push_back({f->t0, f->phase, f->conditional});
    } else if (const auto* pv = std::get_if<model::PersistentValue>(&instr)) {
      advance_clock(pv->t0, "persistent value");
      auto it = channel_of(pv->ch);
      it->second.pvs.push_back({pv->t0, pv->val, -1});
      it->second.end_time = std::max(it->second.end_time, pv->t0 + 1);
    } else if (const auto* a = std::get_if<model::Acquire>(&instr)) {
      advance_clock(a->t0, "acquire");
    } else if (const auto* s = std::get_if<model::Snapshot>(&instr)) {
      if (s->t0) advance_clock(*s->t0, "snapshot");
    }
    // bfunc/copy carry no time of their own; the engine anchors them to the
    // preceding acquisition.
  }

  // A persistent value holds until the next pulse or pv on its channel.
  for (auto& [ch, tl] : out) {
    for (auto& pv : tl.pvs) {
      long long until = -1;
      for (const auto& p : tl.pulses) {
        if (p.t0 > pv.t0) {
          until = until < 0 ? p.t0 : std::min(until, p.t0);
        }
      }
      for (const auto& other : tl.pvs) {
        if (other.t0 > pv.t0) {
          until = until < 0 ? other.t0 : std::min(until, other.t0);
        }
      }
      pv.until = until;
    }
  }
  return out;
}

}  // namespace qobjsim::pulse
