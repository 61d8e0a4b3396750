#include "qobjsim/model/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qobjsim/common/hex.hpp"
#include "qobjsim/model/channel.hpp"
#include "qobjsim/model/serialize.hpp"

namespace qobjsim::model {

namespace {

constexpr double kSampleTolerance = 1e-12;

const std::set<std::string>& reserved_pulse_names() {
  static const std::set<std::string> names = {"fc", "pv", "acquire", "bfunc", "copy",
                                              "snapshot"};
  return names;
}

struct QobjChecker {
  const Qobj& q;
  const BackendConfiguration& cfg;
  const PulseDefaults& defaults;
  const ValidateOptions& opts;
  ValidationReport& report;

  bool qubit_in_range(long long idx) const {
    return !cfg.bounded_qubits() || (idx >= 0 && idx < cfg.n_qubits);
  }

  void check_qubits(const std::vector<long long>& qubits, const std::string& path) {
    for (size_t i = 0; i < qubits.size(); ++i) {
      if (!qubit_in_range(qubits[i])) {
        report.error(index_path(path + "/qubits", i),
                     "qubit " + std::to_string(qubits[i]) + " out of range for backend with " +
                         std::to_string(cfg.n_qubits) + " qubits");
      }
    }
  }

  void check_memory_slots(const std::vector<long long>& slots, long long memory_slots,
                          const std::string& path, const char* key) {
    for (size_t i = 0; i < slots.size(); ++i) {
      if (slots[i] < 0 || slots[i] >= memory_slots) {
        report.error(index_path(path + "/" + key, i),
                     "memory slot " + std::to_string(slots[i]) + " out of range (" +
                         std::to_string(memory_slots) + " slots configured)");
      }
    }
  }

  void check_register_slot(long long slot, const std::string& path) {
    if (!cfg.conditional) {
      report.error(path, "register use requires a conditional-capable backend");
      return;
    }
    long long n = cfg.n_registers.value_or(0);
    if (slot < 0 || slot >= n) {
      report.error(path, "register slot " + std::to_string(slot) + " out of range (" +
                             std::to_string(n) + " registers)");
    }
  }

  void check_conditional_field(const std::optional<long long>& cond, const std::string& path) {
    if (!cond) return;
    check_register_slot(*cond, path + "/conditional");
  }

  /// Registers a qubit may store into, per register_map. acquisition_latency
  /// supersedes register_map when present, and the paper does not state a
  /// precedence for QASM jobs, so the map is only enforced in its absence.
  void check_register_map(long long qubit, long long reg, const std::string& path) {
    if (cfg.acquisition_latency) return;
    if (!cfg.register_map) return;
    const auto& map = *cfg.register_map;
    if (qubit < 0 || static_cast<size_t>(qubit) >= map.size()) return;
    const auto& row = map[qubit];
    if (reg >= 0 && static_cast<size_t>(reg) < row.size() && row[reg] == 0) {
      report.error(path, "register_map forbids qubit " + std::to_string(qubit) +
                             " storing to register " + std::to_string(reg));
    }
  }

  void check_channel(const std::string& ch, const std::string& path) {
    auto parsed = Channel::parse(ch);
    if (!parsed) {
      report.error(path + "/ch", "channel id '" + ch + "' does not match d<k>|m<k>|u<k>");
      return;
    }
    long long limit = -1;
    switch (parsed->kind) {
      case Channel::Kind::Drive:
      case Channel::Kind::Measure:
        if (cfg.bounded_qubits()) limit = cfg.n_qubits;
        break;
      case Channel::Kind::Control:
        limit = cfg.n_uchannels.value_or(0);
        break;
    }
    if (limit >= 0 && parsed->index >= limit) {
      report.error(path + "/ch", "channel '" + ch + "' out of range");
    }
  }

  void check_pulse_library(const std::vector<PulseLibEntry>& lib, const std::string& path) {
    for (size_t i = 0; i < lib.size(); ++i) {
      const auto& entry = lib[i];
      std::string epath = index_path(path, i);
      if (reserved_pulse_names().count(entry.name)) {
        report.error(epath + "/name", "pulse name '" + entry.name + "' is reserved");
      }
      for (size_t s = 0; s < entry.samples.size(); ++s) {
        if (std::abs(entry.samples[s]) > 1.0 + kSampleTolerance) {
          report.error(index_path(epath + "/samples", s), "sample magnitude > 1");
        }
      }
    }
  }

  const PulseLibEntry* find_pulse(const std::string& name,
                                  const std::vector<PulseLibEntry>* user_lib) const {
    // User pulses supersede default pulses of the same name.
    if (user_lib) {
      for (const auto& p : *user_lib) {
        if (p.name == name) return &p;
      }
    }
    for (const auto& p : defaults.pulse_library) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }

  void check_kernel_names(const std::optional<std::vector<KernelSpec>>& kernels,
                          const std::optional<std::vector<std::string>>& available,
                          const std::string& path, const char* what) {
    if (!kernels) return;
    for (size_t i = 0; i < kernels->size(); ++i) {
      const auto& k = (*kernels)[i];
      if (available &&
          std::find(available->begin(), available->end(), k.name) == available->end()) {
        report.error(index_path(path, i),
                     std::string(what) + " '" + k.name + "' not offered by backend");
      }
    }
  }

  void check_meas_map_split(const Acquire& a, const std::string& path) {
    if (!cfg.meas_map) return;
    std::set<long long> acquired(a.qubits.begin(), a.qubits.end());
    for (const auto& group : *cfg.meas_map) {
      size_t overlap = 0;
      for (int qb : group) overlap += acquired.count(qb);
      if (overlap > 0 && overlap < group.size()) {
        std::string msg = "acquire splits a multiplexed measurement group";
        if (opts.strict) {
          report.error(path, msg);
        } else {
          report.warning(path, msg);
        }
      }
    }
  }

  void check_lo_freqs(const std::optional<std::vector<double>>& freqs,
                      const std::optional<std::vector<std::array<double, 2>>>& ranges,
                      const std::string& path, const char* what) {
    if (!freqs) return;
    if (cfg.bounded_qubits() && freqs->size() != static_cast<size_t>(cfg.n_qubits)) {
      report.error(path, std::string(what) + " must list one frequency per qubit");
      return;
    }
    if (!ranges) return;
    for (size_t i = 0; i < freqs->size() && i < ranges->size(); ++i) {
      double f = (*freqs)[i];
      if (f < (*ranges)[i][0] || f > (*ranges)[i][1]) {
        report.error(index_path(path, i),
                     std::string(what) + " outside the allowed range [" +
                         std::to_string((*ranges)[i][0]) + ", " +
                         std::to_string((*ranges)[i][1]) + "]");
      }
    }
  }

  void check_config(const UserConfig& c, const std::string& path, bool is_job_level) {
    if (is_job_level) {
      if (!c.shots) {
        report.error(path, "config requires 'shots'");
      } else if (*c.shots < 1) {
        report.error(path + "/shots", "shots must be >= 1");
      }
      if (!c.memory_slots) {
        report.error(path, "config requires 'memory_slots'");
      } else if (*c.memory_slots < 0) {
        report.error(path + "/memory_slots", "memory_slots must be >= 0");
      }
    }
    if (c.pulse_library) check_pulse_library(*c.pulse_library, path + "/pulse_library");
    if (c.meas_level) {
      if (cfg.meas_levels &&
          std::find(cfg.meas_levels->begin(), cfg.meas_levels->end(), *c.meas_level) ==
              cfg.meas_levels->end()) {
        report.error(path + "/meas_level", "measurement level " +
                                               std::to_string(*c.meas_level) +
                                               " not offered by backend");
      }
      if (*c.meas_level == 2 && c.meas_return && *c.meas_return == "avg") {
        report.error(path + "/meas_return", "meas_return is fixed to \"single\" at level 2");
      }
      if (*c.meas_level == 0 && !c.memory_slot_size) {
        report.error(path, "level 0 output requires 'memory_slot_size'");
      }
      if (*c.meas_level == 0 && c.meas_return && *c.meas_return == "single") {
        std::string msg = "level 0 in single-shot mode is high bandwidth";
        if (opts.strict) {
          report.error(path + "/meas_return", msg);
        } else {
          report.warning(path + "/meas_return", msg);
        }
      }
    }
    check_lo_freqs(c.qubit_lo_freq, cfg.qubit_lo_range, path + "/qubit_lo_freq",
                   "qubit_lo_freq");
    check_lo_freqs(c.meas_lo_freq, cfg.meas_lo_range, path + "/meas_lo_freq", "meas_lo_freq");
    if (c.rep_time && cfg.rep_times) {
      bool found = false;
      for (double rt : *cfg.rep_times) {
        if (std::abs(rt - *c.rep_time) < 1e-9) found = true;
      }
      if (!found) report.error(path + "/rep_time", "rep_time not in the backend's rep_times");
    }
  }

  void check_bfunc(const Bfunc& b, const std::string& path) {
    check_register_slot(b.reg, path + "/register");
    if (b.memory) {
      // Memory bound checked by the caller with the effective slot count.
    }
    if (b.mask.size() > 2 + 16) {
      report.error(path + "/mask", "mask wider than 64 bits is not supported");
    }
    if (b.val.size() > 2 + 16) {
      report.error(path + "/val", "value wider than 64 bits is not supported");
    }
  }

  void check_instruction(const Instruction& instr, const UserConfig& eff,
                         const std::string& path) {
    long long memory_slots = eff.memory_slots.value_or(0);
    int meas_level = eff.meas_level.value_or(2);

    if (const auto* b = std::get_if<Bfunc>(&instr)) {
      check_bfunc(*b, path);
      if (b->memory && (*b->memory < 0 || *b->memory >= memory_slots)) {
        report.error(path + "/memory", "memory slot out of range");
      }
      if (q.type == QobjType::PULSE && meas_level != 2) {
        report.error(path, "bfunc requires measurement level 2");
      }
    } else if (const auto* c = std::get_if<Copy>(&instr)) {
      check_register_slot(c->register_orig, path + "/register_orig");
      for (size_t i = 0; i < c->register_copy.size(); ++i) {
        check_register_slot(c->register_copy[i], index_path(path + "/register_copy", i));
      }
      if (q.type == QobjType::PULSE && meas_level != 2) {
        report.error(path, "copy requires measurement level 2");
      }
    } else if (const auto* g = std::get_if<Gate>(&instr)) {
      check_qubits(g->qubits, path);
      check_conditional_field(g->conditional, path);
      if (!cfg.basis_gates.empty() &&
          std::find(cfg.basis_gates.begin(), cfg.basis_gates.end(), g->name) ==
              cfg.basis_gates.end()) {
        report.error(path + "/name", "gate '" + g->name + "' not in the backend basis");
      }
    } else if (const auto* b = std::get_if<Barrier>(&instr)) {
      check_qubits(b->qubits, path);
    } else if (const auto* rs = std::get_if<Reset>(&instr)) {
      check_qubits(rs->qubits, path);
    } else if (const auto* m = std::get_if<Measure>(&instr)) {
      check_qubits(m->qubits, path);
      if (m->memory.size() != m->qubits.size()) {
        report.error(path + "/memory", "memory must list one slot per measured qubit");
      }
      check_memory_slots(m->memory, memory_slots, path, "memory");
      if (m->reg) {
        if (m->reg->size() != m->qubits.size()) {
          report.error(path + "/register", "register must list one slot per measured qubit");
        }
        for (size_t i = 0; i < m->reg->size(); ++i) {
          check_register_slot((*m->reg)[i], index_path(path + "/register", i));
          if (i < m->qubits.size()) {
            check_register_map(m->qubits[i], (*m->reg)[i], index_path(path + "/register", i));
          }
        }
      }
    } else if (const auto* s = std::get_if<Snapshot>(&instr)) {
      if (s->type != "state") {
        report.error(path + "/type", "snapshot type '" + s->type + "' is not supported");
      }
    } else if (const auto* p = std::get_if<DrivePulse>(&instr)) {
      check_channel(p->ch, path);
      check_conditional_field(p->conditional, path);
      if (p->conditional && meas_level != 2) {
        report.error(path + "/conditional", "conditional pulses require measurement level 2");
      }
      if (p->t0 < 0) report.error(path + "/t0", "t0 must be >= 0");
      if (!find_pulse(p->name, eff.pulse_library ? &*eff.pulse_library : nullptr)) {
        report.error(path + "/name", "pulse '" + p->name + "' not found in user or default "
                                     "pulse library");
      }
    } else if (const auto* f = std::get_if<FrameChange>(&instr)) {
      check_channel(f->ch, path);
      check_conditional_field(f->conditional, path);
      if (f->t0 < 0) report.error(path + "/t0", "t0 must be >= 0");
    } else if (const auto* pv = std::get_if<PersistentValue>(&instr)) {
      check_channel(pv->ch, path);
      if (pv->t0 < 0) report.error(path + "/t0", "t0 must be >= 0");
      if (std::abs(pv->val) > 1.0 + kSampleTolerance) {
        report.error(path + "/val", "persistent value magnitude > 1");
      }
    } else if (const auto* a = std::get_if<Acquire>(&instr)) {
      check_qubits(a->qubits, path);
      if (a->t0 < 0) report.error(path + "/t0", "t0 must be >= 0");
      if (a->duration <= 0) report.error(path + "/duration", "duration must be positive");
      if (a->memory_slot.size() != a->qubits.size()) {
        report.error(path + "/memory_slot", "memory_slot must list one slot per qubit");
      }
      check_memory_slots(a->memory_slot, memory_slots, path, "memory_slot");
      if (a->register_slot) {
        if (!cfg.conditional || meas_level != 2) {
          report.error(path + "/register_slot",
                       "register_slot requires a conditional backend and measurement level 2");
        }
        if (a->register_slot->size() != a->qubits.size()) {
          report.error(path + "/register_slot", "register_slot must list one slot per qubit");
        }
        for (size_t i = 0; i < a->register_slot->size(); ++i) {
          check_register_slot((*a->register_slot)[i], index_path(path + "/register_slot", i));
        }
      }
      check_kernel_names(a->kernels, cfg.meas_kernels, path + "/kernels", "kernel");
      check_kernel_names(a->discriminators, cfg.discriminators, path + "/discriminators",
                         "discriminator");
      check_meas_map_split(*a, path);
    }
  }

  void run() {
    if (q.type == QobjType::PULSE && !cfg.open_pulse) {
      report.error("/type", "backend does not accept OpenPulse experiments");
    }
    check_config(q.config, "/config", true);
    if (q.type == QobjType::PULSE && !q.config.meas_level) {
      bool any_exp_level = std::any_of(q.experiments.begin(), q.experiments.end(),
                                       [](const Experiment& e) {
                                         return e.config.meas_level.has_value();
                                       });
      if (!any_exp_level) report.error("/config", "pulse jobs require 'meas_level'");
    }
    for (size_t e = 0; e < q.experiments.size(); ++e) {
      const Experiment& exp = q.experiments[e];
      std::string epath = index_path("/experiments", e);
      check_config(exp.config, epath + "/config", false);
      UserConfig eff = q.config.overridden_by(exp.config);
      for (size_t i = 0; i < exp.instructions.size(); ++i) {
        check_instruction(exp.instructions[i], eff,
                          epath + "/instructions/" + std::to_string(i));
      }
    }
  }
};

}  // namespace

bool ValidationReport::passed() const { return error_count() == 0; }

size_t ValidationReport::error_count() const {
  size_t n = 0;
  for (const auto& v : violations) {
    if (v.severity == Violation::Severity::Error) ++n;
  }
  return n;
}

Json ValidationReport::to_json() const {
  Json arr = Json::array();
  for (const auto& v : violations) {
    Json item = Json::object();
    item["path"] = v.path;
    item["message"] = v.message;
    item["severity"] = v.severity == Violation::Severity::Error ? "error" : "warning";
    arr.push_back(item);
  }
  Json out = Json::object();
  out["violations"] = arr;
  return out;
}

ValidationReport validate_qobj(const Qobj& q, const BackendConfiguration& cfg,
                               const PulseDefaults& defaults, const ValidateOptions& opts) {
  ValidationReport report;
  QobjChecker checker{q, cfg, defaults, opts, report};
  checker.run();
  return report;
}

ValidationReport validate_backend_configuration(const BackendConfiguration& cfg) {
  ValidationReport r;

  std::set<std::string> config_names;
  for (size_t i = 0; i < cfg.gates.size(); ++i) {
    config_names.insert(cfg.gates[i].name);
    const auto& g = cfg.gates[i];
    std::string gpath = index_path("/gates", i);
    if (std::find(cfg.basis_gates.begin(), cfg.basis_gates.end(), g.name) ==
        cfg.basis_gates.end()) {
      r.error(gpath + "/name", "gate '" + g.name + "' missing from basis_gates");
    }
    std::optional<size_t> arity;
    for (size_t k = 0; k < g.coupling_map.size(); ++k) {
      if (!arity) arity = g.coupling_map[k].size();
      if (g.coupling_map[k].size() != *arity) {
        r.error(index_path(gpath + "/coupling_map", k),
                "coupling_map entries must share the gate's arity");
      }
    }
    if (g.latency_map && cfg.n_registers) {
      for (size_t k = 0; k < g.latency_map->size(); ++k) {
        if ((*g.latency_map)[k].size() != static_cast<size_t>(*cfg.n_registers)) {
          r.error(index_path(gpath + "/latency_map", k),
                  "latency_map rows must have n_registers entries");
        }
      }
    }
  }
  for (const auto& name : cfg.basis_gates) {
    if (!config_names.count(name)) {
      r.error("/basis_gates", "basis gate '" + name + "' has no gate_config entry");
    }
  }

  if (cfg.bounded_qubits()) {
    for (size_t i = 0; i < cfg.coupling_map.size(); ++i) {
      auto [a, b] = cfg.coupling_map[i];
      if (a < 0 || a >= cfg.n_qubits || b < 0 || b >= cfg.n_qubits) {
        r.error(index_path("/coupling_map", i), "coupling pair indexes a missing qubit");
      }
    }
  }

  if (cfg.conditional) {
    if (!cfg.n_registers) r.error("", "conditional backends require n_registers");
    if (!cfg.register_map) {
      r.error("", "conditional backends require register_map");
    } else if (cfg.bounded_qubits()) {
      if (cfg.register_map->size() != static_cast<size_t>(cfg.n_qubits)) {
        r.error("/register_map", "register_map must have one row per qubit");
      }
      for (size_t i = 0; i < cfg.register_map->size(); ++i) {
        if (cfg.n_registers &&
            (*cfg.register_map)[i].size() != static_cast<size_t>(*cfg.n_registers)) {
          r.error(index_path("/register_map", i),
                  "register_map rows must have n_registers entries");
        }
      }
    }
  }

  if (cfg.open_pulse) {
    if (!cfg.n_uchannels) r.error("", "open_pulse backends require n_uchannels");
    if (!cfg.hamiltonian) r.error("", "open_pulse backends require a hamiltonian");
    if (!cfg.dt) r.error("", "open_pulse backends require dt");
    if (!cfg.meas_levels) r.error("", "open_pulse backends require meas_levels");
    if (cfg.meas_levels) {
      for (size_t i = 0; i < cfg.meas_levels->size(); ++i) {
        int lvl = (*cfg.meas_levels)[i];
        if (lvl < 0 || lvl > 2) {
          r.error(index_path("/meas_levels", i), "measurement level must be 0, 1 or 2");
        }
        if (lvl == 0 && !cfg.dtm) r.error("", "level 0 output requires dtm");
      }
    }
    if (cfg.u_channel_lo) {
      if (cfg.n_uchannels &&
          cfg.u_channel_lo->size() != static_cast<size_t>(*cfg.n_uchannels)) {
        r.error("/u_channel_lo", "u_channel_lo must have n_uchannels entries");
      }
      for (size_t i = 0; i < cfg.u_channel_lo->size(); ++i) {
        for (size_t k = 0; k < (*cfg.u_channel_lo)[i].size(); ++k) {
          int qb = (*cfg.u_channel_lo)[i][k].q;
          if (cfg.bounded_qubits() && (qb < 0 || qb >= cfg.n_qubits)) {
            r.error(index_path(index_path("/u_channel_lo", i), k),
                    "u channel references a missing qubit");
          }
        }
      }
    } else if (cfg.n_uchannels.value_or(0) > 0) {
      r.error("", "backends with u channels must provide u_channel_lo");
    }
  }

  if (cfg.meas_map) {
    std::set<int> seen;
    for (size_t i = 0; i < cfg.meas_map->size(); ++i) {
      for (int qb : (*cfg.meas_map)[i]) {
        if (!seen.insert(qb).second) {
          r.error(index_path("/meas_map", i), "meas_map groups must be disjoint");
        }
        if (cfg.bounded_qubits() && (qb < 0 || qb >= cfg.n_qubits)) {
          r.error(index_path("/meas_map", i), "meas_map references a missing qubit");
        }
      }
    }
  }

  auto check_ranges = [&](const std::optional<std::vector<std::array<double, 2>>>& ranges,
                          const char* key) {
    if (!ranges) return;
    for (size_t i = 0; i < ranges->size(); ++i) {
      if ((*ranges)[i][0] > (*ranges)[i][1]) {
        r.error(index_path(std::string("/") + key, i), "range low exceeds high");
      }
    }
  };
  check_ranges(cfg.qubit_lo_range, "qubit_lo_range");
  check_ranges(cfg.meas_lo_range, "meas_lo_range");
  check_ranges(cfg.channel_bandwidth, "channel_bandwidth");

  return r;
}

ValidationReport validate_pulse_defaults(const PulseDefaults& d,
                                         const BackendConfiguration& cfg) {
  ValidationReport r;
  if (cfg.bounded_qubits() &&
      d.qubit_freq_est.size() != static_cast<size_t>(cfg.n_qubits)) {
    r.error("/qubit_freq_est", "expected one estimate per qubit");
  }
  for (size_t i = 0; i < d.pulse_library.size(); ++i) {
    const auto& entry = d.pulse_library[i];
    if (reserved_pulse_names().count(entry.name)) {
      r.error(index_path("/pulse_library", i), "pulse name '" + entry.name + "' is reserved");
    }
    for (size_t s = 0; s < entry.samples.size(); ++s) {
      if (std::abs(entry.samples[s]) > 1.0 + kSampleTolerance) {
        r.error(index_path(index_path("/pulse_library", i), s), "sample magnitude > 1");
      }
    }
  }
  if (d.meas_kernel && cfg.meas_kernels &&
      std::find(cfg.meas_kernels->begin(), cfg.meas_kernels->end(), d.meas_kernel->name) ==
          cfg.meas_kernels->end()) {
    r.error("/meas_kernel", "default kernel not in the configured kernel list");
  }
  if (d.discriminator && cfg.discriminators &&
      std::find(cfg.discriminators->begin(), cfg.discriminators->end(),
                d.discriminator->name) == cfg.discriminators->end()) {
    r.error("/discriminator", "default discriminator not in the configured list");
  }
  return r;
}

ValidationReport validate_backend_properties(const BackendProperties& p,
                                             const BackendConfiguration& cfg) {
  ValidationReport r;
  for (size_t i = 0; i < p.gates.size(); ++i) {
    if (std::find(cfg.basis_gates.begin(), cfg.basis_gates.end(), p.gates[i].gate) ==
        cfg.basis_gates.end()) {
      r.error(index_path("/gates", i) + "/gate",
              "gate '" + p.gates[i].gate + "' not in the configuration's basis_gates");
    }
  }
  return r;
}

}  // namespace qobjsim::model
