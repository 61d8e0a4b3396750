#include "qobjsim/pulse/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qobjsim/common/cancel.hpp"
#include "qobjsim/common/hex.hpp"
#include "qobjsim/pulse/kernels.hpp"

namespace qobjsim::pulse {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix strict_upper(const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = r + 1; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

Json state_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

/// Walk cursor over one channel's events.
struct ChannelWalk {
  const ChannelTimeline* tl = nullptr;
  size_t pulse_idx = 0;
  size_t fc_idx = 0;
  const PulseEvent* active_pulse = nullptr;  // null when skipped or idle
  long long active_until = -1;
  double phase = 0.0;

  void consume_fcs(long long t, const std::function<bool(long long)>& fires) {
    while (fc_idx < tl->frame_changes.size() && tl->frame_changes[fc_idx].t <= t) {
      const auto& fc = tl->frame_changes[fc_idx];
      if (!fc.conditional || fires(*fc.conditional)) phase += fc.phase;
      ++fc_idx;
    }
  }

  Complex output_at(long long t, const std::function<bool(long long)>& fires) {
    consume_fcs(t, fires);
    // Enter any pulse starting here; the conditional is checked at t0.
    while (pulse_idx < tl->pulses.size() && tl->pulses[pulse_idx].t0 <= t) {
      const PulseEvent& p = tl->pulses[pulse_idx];
      ++pulse_idx;
      bool granted = !p.conditional || fires(*p.conditional);
      active_pulse = granted ? &p : nullptr;
      active_until = p.end();
    }
    Complex raw{0.0, 0.0};
    if (active_pulse && t < active_until) {
      raw = active_pulse->samples[static_cast<size_t>(t - active_pulse->t0)];
    } else if (t >= active_until || !active_pulse) {
      if (t >= active_until) active_pulse = nullptr;
      for (const auto& pv : tl->pvs) {
        if (t >= pv.t0 && (pv.until < 0 || t < pv.until)) raw = pv.val;
      }
      // A pending pulse window that was skipped still silences any pv? No:
      // a skipped conditional pulse leaves the channel at the pv/zero level.
    }
    return raw * std::exp(Complex(0, -phase));
  }

  double final_phase(const std::function<bool(long long)>& fires) {
    consume_fcs(std::numeric_limits<long long>::max(), fires);
    return phase;
  }
};

int subsystem_level(long long index, size_t k, const ham::SubsystemLayout& layout) {
  return static_cast<int>((index / layout.stride(k)) % layout.subsystems[k].dim);
}

}  // namespace

double PulseExecutor::channel_lo_ghz(const model::Channel& ch) const {
  switch (ch.kind) {
    case model::Channel::Kind::Drive:
      if (static_cast<size_t>(ch.index) < ctx_.qubit_lo_freq.size()) {
        return ctx_.qubit_lo_freq[ch.index];
      }
      break;
    case model::Channel::Kind::Measure:
      if (static_cast<size_t>(ch.index) < ctx_.meas_lo_freq.size()) {
        return ctx_.meas_lo_freq[ch.index];
      }
      break;
    case model::Channel::Kind::Control:
      if (static_cast<size_t>(ch.index) < ctx_.u_lo_freq.size()) {
        return ctx_.u_lo_freq[ch.index];
      }
      break;
  }
  return -1.0;  // no LO configured: run the channel on resonance
}

PulseExecutor::PulseExecutor(const model::Experiment& exp, const PulseRunContext& ctx)
    : exp_(exp), ctx_(ctx) {
  const std::vector<model::PulseLibEntry>* defaults_lib =
      ctx.defaults ? &ctx.defaults->pulse_library : nullptr;
  EffectiveLibrary lib(ctx.user_library, defaults_lib);
  timelines_ = build_timelines(exp.instructions, lib);

  long long last_acquire_end = 0;
  for (size_t i = 0; i < exp.instructions.size(); ++i) {
    const auto& instr = exp.instructions[i];
    if (const auto* a = std::get_if<model::Acquire>(&instr)) {
      acquires_.push_back({*a, i});
      last_acquire_end = a->t0 + a->duration;
      t_end_ = std::max(t_end_, last_acquire_end);
    } else if (const auto* s = std::get_if<model::Snapshot>(&instr)) {
      snapshots_.push_back({s->label, s->type, s->t0.value_or(0)});
      t_end_ = std::max(t_end_, s->t0.value_or(0));
    } else if (std::get_if<model::Bfunc>(&instr) || std::get_if<model::Copy>(&instr)) {
      classical_ops_.push_back({instr, last_acquire_end, i});
    }
  }
  for (const auto& [ch, tl] : timelines_) t_end_ = std::max(t_end_, tl.end_time);

  dim_ = ctx.hamiltonian.layout.total_dim();
  const auto& layout = ctx.hamiltonian.layout;
  frame_diagonal_.assign(static_cast<size_t>(dim_), 0.0);
  std::vector<double> nu(layout.subsystems.size());
  for (size_t k = 0; k < layout.subsystems.size(); ++k) {
    nu[k] = ctx.hamiltonian.subsystem_frame_frequency(k);
  }
  for (long long i = 0; i < dim_; ++i) {
    for (size_t k = 0; k < layout.subsystems.size(); ++k) {
      frame_diagonal_[i] += nu[k] * subsystem_level(i, k, layout);
    }
  }

  for (long long i = 0; i < dim_ && !static_rot_nonzero_; ++i) {
    for (long long j = 0; j < dim_; ++j) {
      if (i == j) {
        if (std::abs(ctx.hamiltonian.static_part(i, i).real() - frame_diagonal_[i]) >
            1e-15) {
          static_rot_nonzero_ = true;
        }
      } else if (ctx.hamiltonian.static_part(i, j) != std::complex<double>(0.0, 0.0)) {
        static_rot_nonzero_ = true;
      }
    }
  }

  for (const auto& [ch, coupling] : ctx.hamiltonian.drives) {
    auto tl = timelines_.find(ch);
    bool driven = tl != timelines_.end() &&
                  (!tl->second.pulses.empty() || !tl->second.pvs.empty());
    if (coupling.nonlinear) {
      if (driven) {
        throw PulseError("NonlinearDriveUnsupported",
                         "channel " + ch.str() +
                             " enters the Hamiltonian nonlinearly and cannot be driven");
      }
      continue;
    }
    DriveTerm term;
    term.lowering = strict_upper(coupling.matrix);
    double lo = channel_lo_ghz(ch);
    if (lo >= 0.0 && !coupling.subsystems.empty()) {
      double frame = nu[static_cast<size_t>(*coupling.subsystems.begin())];
      term.detuning = 2.0 * M_PI * lo - frame;
    }
    drive_terms_[ch] = std::move(term);
  }
}

ShotOutcome PulseExecutor::run_shot(long long shot, bool record_snapshots) const {
  ShotRng rng(ctx_.seed, ctx_.experiment_index, static_cast<uint64_t>(shot));
  const auto& layout = ctx_.hamiltonian.layout;

  Vector psi = Vector::Zero(dim_);
  psi(0) = 1.0;
  std::vector<uint8_t> registers(static_cast<size_t>(ctx_.n_registers), 0);

  ShotOutcome outcome;
  outcome.slots.assign(static_cast<size_t>(ctx_.memory_slots), SlotRecord{});

  auto fires = [&registers](long long reg) {
    return reg >= 0 && static_cast<size_t>(reg) < registers.size() && registers[reg] != 0;
  };

  std::map<model::Channel, ChannelWalk> walks;
  for (const auto& [ch, tl] : timelines_) {
    walks[ch].tl = &tl;
    outcome.waveforms[ch].assign(static_cast<size_t>(t_end_), Complex{0.0, 0.0});
  }

  auto measure_subsystem = [&](size_t k) {
    double p1 = 0.0;
    for (long long i = 0; i < dim_; ++i) {
      if (subsystem_level(i, k, layout) >= 1) p1 += std::norm(psi(i));
    }
    int outcome_bit = rng.next_double() < p1 ? 1 : 0;
    double keep = outcome_bit ? p1 : 1.0 - p1;
    if (keep <= 0.0) {
      outcome_bit = 1 - outcome_bit;
      keep = 1.0 - keep;
    }
    double scale = 1.0 / std::sqrt(keep);
    for (long long i = 0; i < dim_; ++i) {
      bool excited = subsystem_level(i, k, layout) >= 1;
      if (excited == (outcome_bit == 1)) {
        psi(i) *= scale;
      } else {
        psi(i) = 0.0;
      }
    }
    return outcome_bit;
  };

  struct LiveAcquire {
    const PendingAcquire* src;
    std::vector<int> bits;  // parallel to acquire.qubits
  };
  std::vector<LiveAcquire> live;

  auto kernel_for = [&](const model::Acquire& a, size_t i) -> model::KernelSpec {
    model::KernelSpec spec;
    if (a.kernels && !a.kernels->empty()) {
      spec = a.kernels->size() == 1 ? (*a.kernels)[0] : (*a.kernels)[std::min(i, a.kernels->size() - 1)];
    } else if (ctx_.defaults && ctx_.defaults->meas_kernel) {
      spec = *ctx_.defaults->meas_kernel;
    } else {
      spec.name = "boxcar";
    }
    if (spec.params.empty() && ctx_.defaults && ctx_.defaults->meas_kernel &&
        ctx_.defaults->meas_kernel->name == spec.name) {
      spec.params = ctx_.defaults->meas_kernel->params;
    }
    return spec;
  };

  auto discriminator_for = [&](const model::Acquire& a, size_t i) -> model::KernelSpec {
    model::KernelSpec spec;
    if (a.discriminators && !a.discriminators->empty()) {
      spec = a.discriminators->size() == 1
                 ? (*a.discriminators)[0]
                 : (*a.discriminators)[std::min(i, a.discriminators->size() - 1)];
    } else if (ctx_.defaults && ctx_.defaults->discriminator) {
      spec = *ctx_.defaults->discriminator;
    } else {
      spec.name = "max_1Q_fidelity";
    }
    if (spec.params.empty() && ctx_.defaults && ctx_.defaults->discriminator &&
        ctx_.defaults->discriminator->name == spec.name) {
      spec.params = ctx_.defaults->discriminator->params;
    }
    return spec;
  };

  long long level0_len = ctx_.memory_slot_size > 0
                             ? ctx_.memory_slot_size
                             : 1;

  auto finalize_acquire = [&](const LiveAcquire& la) {
    const model::Acquire& a = la.src->acquire;
    long long window_len =
        ctx_.memory_slot_size > 0
            ? ctx_.memory_slot_size
            : std::max<long long>(1, llround(a.duration * ctx_.dt / ctx_.dtm));
    for (size_t i = 0; i < a.qubits.size(); ++i) {
      long long q = a.qubits[i];
      long long slot = i < a.memory_slot.size() ? a.memory_slot[i] : -1;
      int bit = la.bits[i];

      model::Channel stim{model::Channel::Kind::Measure, static_cast<int>(q)};
      const std::vector<Complex>* wave = nullptr;
      auto wit = outcome.waveforms.find(stim);
      if (wit != outcome.waveforms.end()) wave = &wit->second;

      // The raw window is the m-channel stimulus envelope resampled onto the
      // dtm grid, rotated by the state-dependent phase (0 for |0>, pi/2 for
      // |1>), plus per-sample IQ noise.
      std::vector<Complex> raw(static_cast<size_t>(window_len), Complex{0.0, 0.0});
      Complex rot = bit ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
      for (long long j = 0; j < window_len; ++j) {
        long long k = a.t0 + llround(j * ctx_.dtm / ctx_.dt);
        Complex stim_val{0.0, 0.0};
        if (wave && k >= a.t0 && k < a.t0 + a.duration &&
            k < static_cast<long long>(wave->size())) {
          stim_val = (*wave)[static_cast<size_t>(k)];
        }
        Complex noise{0.0, 0.0};
        if (ctx_.iq_noise_sigma > 0.0) {
          noise = Complex(rng.next_gaussian(), rng.next_gaussian()) * ctx_.iq_noise_sigma;
        }
        raw[static_cast<size_t>(j)] = stim_val * rot + noise;
      }

      auto kspec = kernel_for(a, i);
      Complex iq = apply_kernel(kspec.name, kspec.params, raw);
      auto dspec = discriminator_for(a, i);
      int out_bit = apply_discriminator(dspec.name, dspec.params, iq);

      if (slot >= 0 && static_cast<size_t>(slot) < outcome.slots.size()) {
        SlotRecord& rec = outcome.slots[static_cast<size_t>(slot)];
        rec.filled = true;
        rec.level0 = std::move(raw);
        rec.level1 = iq;
        rec.bit = static_cast<uint8_t>(out_bit);
      }
      if (a.register_slot && i < a.register_slot->size()) {
        long long rs = (*a.register_slot)[i];
        if (rs >= 0 && static_cast<size_t>(rs) < registers.size()) {
          registers[static_cast<size_t>(rs)] = static_cast<uint8_t>(out_bit);
        }
      }
    }
  };

  auto apply_classical = [&](const model::Instruction& op) {
    if (const auto* b = std::get_if<model::Bfunc>(&op)) {
      uint64_t mask = hex_to_u64(b->mask);
      uint64_t val = hex_to_u64(b->val);
      uint64_t regs = 0;
      for (size_t i = 0; i < registers.size() && i < 64; ++i) {
        if (registers[i]) regs |= 1ULL << i;
      }
      bool result = (regs & mask) == val;
      if (b->relation == "!=") result = !result;
      if (b->reg >= 0 && static_cast<size_t>(b->reg) < registers.size()) {
        registers[static_cast<size_t>(b->reg)] = result ? 1 : 0;
      }
      if (b->memory && *b->memory >= 0 &&
          static_cast<size_t>(*b->memory) < outcome.slots.size()) {
        SlotRecord& rec = outcome.slots[static_cast<size_t>(*b->memory)];
        rec.filled = true;
        rec.bit = result ? 1 : 0;
        rec.level1 = Complex(result ? 1.0 : 0.0, 0.0);
        rec.level0.assign(static_cast<size_t>(level0_len), rec.level1);
      }
    } else if (const auto* c = std::get_if<model::Copy>(&op)) {
      if (c->register_orig >= 0 &&
          static_cast<size_t>(c->register_orig) < registers.size()) {
        uint8_t v = registers[static_cast<size_t>(c->register_orig)];
        for (long long dst : c->register_copy) {
          if (dst >= 0 && static_cast<size_t>(dst) < registers.size()) {
            registers[static_cast<size_t>(dst)] = v;
          }
        }
      }
    }
  };

  auto corrected_state = [&]() {
    Vector out = psi;
    for (size_t k = 0; k < layout.subsystems.size(); ++k) {
      model::Channel dk{model::Channel::Kind::Drive, static_cast<int>(k)};
      auto it = walks.find(dk);
      if (it == walks.end()) continue;
      double phi = it->second.phase;
      for (long long i = 0; i < dim_; ++i) {
        int n = subsystem_level(i, k, layout);
        if (n != 0) out(i) *= std::exp(Complex(0, phi * n));
      }
    }
    return out;
  };

  const Matrix& h_static = ctx_.hamiltonian.static_part;
  Matrix h_work = Matrix::Zero(dim_, dim_);
  Eigen::SelfAdjointEigenSolver<Matrix> solver;

  double dt_sub = ctx_.dt / ctx_.substeps;

  size_t acquire_cursor = 0;
  size_t classical_cursor = 0;

  auto service_time = [&](long long t) {
    // 1. acquisition windows closing now (registers become visible).
    for (auto it = live.begin(); it != live.end();) {
      if (it->src->acquire.t0 + it->src->acquire.duration == t) {
        finalize_acquire(*it);
        it = live.erase(it);
      } else {
        ++it;
      }
    }
    // 2. classical register ops anchored to the acquisition that closed.
    while (classical_cursor < classical_ops_.size() &&
           classical_ops_[classical_cursor].anchor <= t) {
      apply_classical(classical_ops_[classical_cursor].op);
      ++classical_cursor;
    }
    // 3. acquisitions starting now: one projective sample per (t, qubit).
    std::map<long long, int> sampled;
    while (acquire_cursor < acquires_.size() && acquires_[acquire_cursor].acquire.t0 == t) {
      const PendingAcquire& pa = acquires_[acquire_cursor];
      LiveAcquire la;
      la.src = &pa;
      for (long long q : pa.acquire.qubits) {
        auto it = sampled.find(q);
        if (it == sampled.end()) {
          int bit = measure_subsystem(static_cast<size_t>(q));
          it = sampled.emplace(q, bit).first;
        }
        la.bits.push_back(it->second);
      }
      live.push_back(std::move(la));
      ++acquire_cursor;
    }
  };

  for (long long t = 0; t < t_end_; ++t) {
    if (record_snapshots) {
      for (const auto& snap : snapshots_) {
        if (snap.t0 == t) {
          outcome.snapshots[snap.type][snap.label] = state_json(corrected_state());
        }
      }
    }
    service_time(t);

    // Channel outputs for this sample.
    struct Drive {
      const DriveTerm* term;
      Complex sample;
    };
    std::vector<Drive> active;
    for (auto& [ch, walk] : walks) {
      Complex out = walk.output_at(t, fires);
      outcome.waveforms[ch][static_cast<size_t>(t)] = out;
      if (out != Complex(0.0, 0.0)) {
        auto dit = drive_terms_.find(ch);
        if (dit != drive_terms_.end()) active.push_back({&dit->second, out});
      }
    }

    if (active.empty() && !static_rot_nonzero_) continue;  // free evolution in frame

    for (int sub = 0; sub < ctx_.substeps; ++sub) {
      double t_mid = (t + (sub + 0.5) / ctx_.substeps) * ctx_.dt;  // ns
      h_work.setZero();
      for (long long i = 0; i < dim_; ++i) {
        h_work(i, i) = h_static(i, i) - frame_diagonal_[i];
        for (long long j = i + 1; j < dim_; ++j) {
          Complex v = h_static(i, j);
          if (v != Complex(0.0, 0.0)) {
            Complex phase =
                std::exp(Complex(0, (frame_diagonal_[i] - frame_diagonal_[j]) * t_mid));
            h_work(i, j) = v * phase;
            h_work(j, i) = std::conj(v * phase);
          }
        }
      }
      for (const auto& d : active) {
        // Quadrature sign fixed so that a frame change acts as a positive
        // virtual Z rotation on subsequent pulses.
        Complex s = d.sample * std::exp(Complex(0, -d.term->detuning * t_mid));
        h_work += 0.5 * ctx_.drive_scale *
                  (std::conj(s) * d.term->lowering +
                   s * Matrix(d.term->lowering.adjoint()));
      }
      solver.compute(h_work);
      Vector phases(dim_);
      for (long long i = 0; i < dim_; ++i) {
        phases(i) = std::exp(Complex(0, -solver.eigenvalues()(i) * dt_sub));
      }
      psi = solver.eigenvectors() * phases.asDiagonal() *
            solver.eigenvectors().adjoint() * psi;
    }
  }
  service_time(t_end_);

  // Frame changes scheduled at or after the final sample still move the
  // reporting frame.
  for (auto& [ch, walk] : walks) walk.final_phase(fires);

  outcome.final_state = corrected_state();
  return outcome;
}

model::ExperimentResult PulseExecutor::run(std::vector<std::string>* warnings) const {
  std::vector<std::vector<SlotRecord>> all_slots;
  all_slots.reserve(static_cast<size_t>(ctx_.shots));
  Json snapshots = Json::object();

  for (long long shot = 0; shot < ctx_.shots; ++shot) {
    if (ctx_.cancelled && ctx_.cancelled()) throw RunCancelled();
    ShotOutcome outcome = run_shot(shot, shot == 0 && !snapshots_.empty());
    if (shot == 0) snapshots = outcome.snapshots;
    all_slots.push_back(std::move(outcome.slots));
  }
  if (!snapshots_.empty() && ctx_.shots > 1 && warnings) {
    warnings->push_back("snapshot with shots > 1 records the first shot only");
  }

  model::ExperimentResult result;
  result.shots = ctx_.shots;
  result.status = "DONE";
  result.success = true;
  result.header = exp_.header;
  result.seed = static_cast<long long>(ctx_.seed);
  result.meas_return = ctx_.meas_return;
  result.data = assemble_pulse_result(all_slots, ctx_.meas_level, ctx_.meas_return,
                                      ctx_.memory_slots,
                                      ctx_.memory_slot_size > 0 ? ctx_.memory_slot_size : 1);
  if (!snapshots.empty()) result.data.snapshots = snapshots;
  return result;
}

model::ExpData assemble_pulse_result(const std::vector<std::vector<SlotRecord>>& shots_slots,
                                     int meas_level, const std::string& meas_return,
                                     long long memory_slots, long long memory_slot_size) {
  model::ExpData data;
  size_t shots = shots_slots.size();
  size_t slots = static_cast<size_t>(memory_slots);
  size_t slot_len = static_cast<size_t>(std::max<long long>(memory_slot_size, 1));
  bool averaged = meas_return == "avg" && meas_level != 2;

  auto slot_level0 = [&](size_t shot, size_t slot) {
    std::vector<Complex> v(slot_len, Complex{0.0, 0.0});
    if (shot < shots_slots.size() && slot < shots_slots[shot].size()) {
      const SlotRecord& rec = shots_slots[shot][slot];
      for (size_t j = 0; j < slot_len && j < rec.level0.size(); ++j) v[j] = rec.level0[j];
    }
    return v;
  };
  auto slot_level1 = [&](size_t shot, size_t slot) {
    if (shot < shots_slots.size() && slot < shots_slots[shot].size()) {
      return shots_slots[shot][slot].level1;
    }
    return Complex{0.0, 0.0};
  };

  if (meas_level == 0) {
    Json memory = Json::array();
    if (averaged) {
      for (size_t slot = 0; slot < slots; ++slot) {
        std::vector<Complex> mean(slot_len, Complex{0.0, 0.0});
        for (size_t shot = 0; shot < shots; ++shot) {
          auto v = slot_level0(shot, slot);
          for (size_t j = 0; j < slot_len; ++j) mean[j] += v[j];
        }
        Json row = Json::array();
        for (size_t j = 0; j < slot_len; ++j) {
          row.push_back(complex_to_json(mean[j] / double(std::max<size_t>(shots, 1))));
        }
        memory.push_back(row);
      }
    } else {
      for (size_t shot = 0; shot < shots; ++shot) {
        Json per_shot = Json::array();
        for (size_t slot = 0; slot < slots; ++slot) {
          Json row = Json::array();
          for (const auto& z : slot_level0(shot, slot)) row.push_back(complex_to_json(z));
          per_shot.push_back(row);
        }
        memory.push_back(per_shot);
      }
    }
    data.memory = memory;
    return data;
  }

  if (meas_level == 1) {
    Json memory = Json::array();
    if (averaged) {
      for (size_t slot = 0; slot < slots; ++slot) {
        Complex mean{0.0, 0.0};
        for (size_t shot = 0; shot < shots; ++shot) mean += slot_level1(shot, slot);
        memory.push_back(complex_to_json(mean / double(std::max<size_t>(shots, 1))));
      }
    } else {
      for (size_t shot = 0; shot < shots; ++shot) {
        Json per_shot = Json::array();
        for (size_t slot = 0; slot < slots; ++slot) {
          per_shot.push_back(complex_to_json(slot_level1(shot, slot)));
        }
        memory.push_back(per_shot);
      }
    }
    data.memory = memory;
    return data;
  }

  // Level 2: counts histogram plus per-shot hex memory.
  std::map<uint64_t, long long> counts;
  Json memory = Json::array();
  for (size_t shot = 0; shot < shots; ++shot) {
    std::vector<uint8_t> bits(std::max<size_t>(slots, 1), 0);
    for (size_t slot = 0; slot < slots; ++slot) {
      if (slot < shots_slots[shot].size()) bits[slot] = shots_slots[shot][slot].bit;
    }
    uint64_t value = 0;
    for (size_t i = 0; i < bits.size() && i < 64; ++i) {
      if (bits[i]) value |= 1ULL << i;
    }
    counts[value] += 1;
    memory.push_back(encode_hex(bits));
  }
  Json counts_json = Json::object();
  for (const auto& [value, count] : counts) {
    std::vector<uint8_t> bits(std::max<size_t>(slots, 1), 0);
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = (value >> i) & 1;
    counts_json[encode_hex(bits)] = count;
  }
  data.counts = counts_json;
  data.memory = memory;
  return data;
}

model::ExperimentResult run_pulse_experiment(const model::Experiment& exp,
                                             const PulseRunContext& ctx,
                                             std::vector<std::string>* warnings) {
  PulseExecutor executor(exp, ctx);
  return executor.run(warnings);
}

}  // namespace qobjsim::pulse
