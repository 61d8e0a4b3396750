#include "qobjsim/model/serialize.hpp"

namespace qobjsim::model {

namespace {

void merge_extra(Json& out, const Json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
}

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

template <typename T>
Json plain_list(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x);
  return out;
}

template <typename T>
Json matrix(const std::vector<std::vector<T>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(plain_list(row));
  return out;
}

Json range_list(const std::vector<std::array<double, 2>>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(Json::array({r[0], r[1]}));
  return out;
}

}  // namespace

Json to_json(const KernelSpec& k) {
  Json j = Json::object();
  j["name"] = k.name;
  j["params"] = plain_list(k.params);
  merge_extra(j, k.extra);
  return j;
}

Json to_json(const PulseLibEntry& p) {
  Json j = Json::object();
  j["name"] = p.name;
  j["samples"] = complex_list(p.samples);
  merge_extra(j, p.extra);
  return j;
}

Json to_json(const Instruction& instr) {
  struct Visitor {
    Json operator()(const Bfunc& b) {
      Json j = Json::object();
      j["name"] = "bfunc";
      j["mask"] = b.mask;
      j["relation"] = b.relation;
      j["val"] = b.val;
      j["register"] = b.reg_was_list ? Json::array({b.reg}) : Json(b.reg);
      if (b.memory) j["memory"] = *b.memory;
      merge_extra(j, b.extra);
      return j;
    }
    Json operator()(const Copy& c) {
      Json j = Json::object();
      j["name"] = "copy";
      j["register_orig"] = c.register_orig;
      j["register_copy"] = plain_list(c.register_copy);
      merge_extra(j, c.extra);
      return j;
    }
    Json operator()(const Gate& g) {
      Json j = Json::object();
      j["name"] = g.name;
      j["qubits"] = plain_list(g.qubits);
      if (g.params) j["params"] = plain_list(*g.params);
      if (g.texparams) j["texparams"] = plain_list(*g.texparams);
      if (g.conditional) j["conditional"] = *g.conditional;
      merge_extra(j, g.extra);
      return j;
    }
    Json operator()(const Barrier& b) {
      Json j = Json::object();
      j["name"] = "barrier";
      j["qubits"] = plain_list(b.qubits);
      merge_extra(j, b.extra);
      return j;
    }
    Json operator()(const Reset& r) {
      Json j = Json::object();
      j["name"] = "reset";
      j["qubits"] = plain_list(r.qubits);
      merge_extra(j, r.extra);
      return j;
    }
    Json operator()(const Measure& m) {
      Json j = Json::object();
      j["name"] = "measure";
      j["qubits"] = plain_list(m.qubits);
      j["memory"] = plain_list(m.memory);
      if (m.reg) j["register"] = plain_list(*m.reg);
      merge_extra(j, m.extra);
      return j;
    }
    Json operator()(const Snapshot& s) {
      Json j = Json::object();
      j["name"] = "snapshot";
      j["label"] = s.label;
      j["type"] = s.type;
      if (s.t0) j["t0"] = *s.t0;
      merge_extra(j, s.extra);
      return j;
    }
    Json operator()(const DrivePulse& p) {
      Json j = Json::object();
      j["name"] = p.name;
      j["t0"] = p.t0;
      j["ch"] = p.ch;
      if (p.conditional) j["conditional"] = *p.conditional;
      merge_extra(j, p.extra);
      return j;
    }
    Json operator()(const FrameChange& f) {
      Json j = Json::object();
      j["name"] = "fc";
      j["t0"] = f.t0;
      j["ch"] = f.ch;
      j["phase"] = f.phase;
      if (f.conditional) j["conditional"] = *f.conditional;
      merge_extra(j, f.extra);
      return j;
    }
    Json operator()(const PersistentValue& p) {
      Json j = Json::object();
      j["name"] = "pv";
      j["t0"] = p.t0;
      j["ch"] = p.ch;
      j["val"] = complex_to_json(p.val);
      merge_extra(j, p.extra);
      return j;
    }
    Json operator()(const Acquire& a) {
      Json j = Json::object();
      j["name"] = "acquire";
      j["t0"] = a.t0;
      j["duration"] = a.duration;
      if (!a.qubits.empty() || !a.memory_slot.empty()) {
        j["qubits"] = plain_list(a.qubits);
        j["memory_slot"] = plain_list(a.memory_slot);
      }
      if (a.register_slot) j["register_slot"] = plain_list(*a.register_slot);
      if (a.kernels) {
        Json ks = Json::array();
        for (const auto& k : *a.kernels) ks.push_back(to_json(k));
        j["kernels"] = ks;
      }
      if (a.discriminators) {
        Json ds = Json::array();
        for (const auto& d : *a.discriminators) ds.push_back(to_json(d));
        j["discriminators"] = ds;
      }
      merge_extra(j, a.extra);
      return j;
    }
  };
  return std::visit(Visitor{}, instr);
}

Json to_json(const UserConfig& c) {
  Json j = Json::object();
  if (c.shots) j["shots"] = *c.shots;
  if (c.memory_slots) j["memory_slots"] = *c.memory_slots;
  if (c.seed) j["seed"] = *c.seed;
  if (c.max_credits) j["max_credits"] = *c.max_credits;
  if (c.meas_level) j["meas_level"] = *c.meas_level;
  if (c.pulse_library) {
    Json lib = Json::array();
    for (const auto& p : *c.pulse_library) lib.push_back(to_json(p));
    j["pulse_library"] = lib;
  }
  if (c.memory_slot_size) j["memory_slot_size"] = *c.memory_slot_size;
  if (c.meas_return) j["meas_return"] = *c.meas_return;
  if (c.qubit_lo_freq) j["qubit_lo_freq"] = plain_list(*c.qubit_lo_freq);
  if (c.meas_lo_freq) j["meas_lo_freq"] = plain_list(*c.meas_lo_freq);
  if (c.rep_time) j["rep_time"] = *c.rep_time;
  merge_extra(j, c.extra);
  return j;
}

Json to_json(const Experiment& e, QobjType type) {
  (void)type;
  Json j = Json::object();
  j["header"] = e.header;
  j["config"] = to_json(e.config);
  Json instrs = Json::array();
  for (const auto& i : e.instructions) instrs.push_back(to_json(i));
  j["instructions"] = instrs;
  merge_extra(j, e.extra);
  return j;
}

Json to_json(const Qobj& q) {
  Json j = Json::object();
  j["qobj_id"] = q.qobj_id;
  j["type"] = to_string(q.type);
  j["schema_version"] = q.schema_version;
  j["header"] = q.header;
  j["config"] = to_json(q.config);
  Json exps = Json::array();
  for (const auto& e : q.experiments) exps.push_back(to_json(e, q.type));
  j["experiments"] = exps;
  merge_extra(j, q.extra);
  return j;
}

Json to_json(const GateConfig& g) {
  Json j = Json::object();
  j["name"] = g.name;
  j["parameters"] = plain_list(g.parameters);
  j["coupling_map"] = matrix(g.coupling_map);
  j["qasm_def"] = g.qasm_def;
  if (g.conditional) j["conditional"] = *g.conditional;
  if (g.latency_map) j["latency_map"] = matrix(*g.latency_map);
  if (g.description) j["description"] = *g.description;
  merge_extra(j, g.extra);
  return j;
}

Json to_json(const HamiltonianDict& h) {
  Json j = Json::object();
  j["h_latex"] = h.h_latex;
  j["h_str"] = plain_list(h.h_str);
  j["vars"] = h.vars;
  j["osc"] = h.osc;
  return j;
}

Json to_json(const BackendConfiguration& c) {
  Json j = Json::object();
  j["backend_name"] = c.backend_name;
  j["backend_version"] = c.backend_version;
  j["n_qubits"] = c.n_qubits;
  j["basis_gates"] = plain_list(c.basis_gates);
  Json cm = Json::array();
  for (const auto& [a, b] : c.coupling_map) cm.push_back(Json::array({a, b}));
  j["coupling_map"] = cm;
  Json gs = Json::array();
  for (const auto& g : c.gates) gs.push_back(to_json(g));
  j["gates"] = gs;
  j["local"] = c.local;
  j["simulator"] = c.simulator;
  j["conditional"] = c.conditional;
  j["configurable"] = c.configurable;
  j["open_pulse"] = c.open_pulse;
  if (c.n_registers) j["n_registers"] = *c.n_registers;
  if (c.register_map) j["register_map"] = matrix(*c.register_map);
  if (c.online_date) j["online_date"] = *c.online_date;
  if (c.display_name) j["display_name"] = *c.display_name;
  if (c.sample_name) j["sample_name"] = *c.sample_name;
  if (c.description) j["description"] = *c.description;
  if (c.url) j["url"] = *c.url;
  if (c.tags) j["tags"] = plain_list(*c.tags);
  if (c.n_uchannels) j["n_uchannels"] = *c.n_uchannels;
  if (c.hamiltonian) j["hamiltonian"] = to_json(*c.hamiltonian);
  if (c.u_channel_lo) {
    Json u = Json::array();
    for (const auto& row : *c.u_channel_lo) {
      Json terms = Json::array();
      for (const auto& t : row) {
        Json term = Json::object();
        term["q"] = t.q;
        term["scale"] = complex_to_json(t.scale);
        terms.push_back(term);
      }
      u.push_back(terms);
    }
    j["u_channel_lo"] = u;
  }
  if (c.meas_levels) j["meas_levels"] = plain_list(*c.meas_levels);
  if (c.qubit_lo_range) j["qubit_lo_range"] = range_list(*c.qubit_lo_range);
  if (c.meas_lo_range) j["meas_lo_range"] = range_list(*c.meas_lo_range);
  if (c.dt) j["dt"] = *c.dt;
  if (c.dtm) j["dtm"] = *c.dtm;
  if (c.rep_times) j["rep_times"] = plain_list(*c.rep_times);
  if (c.meas_map) j["meas_map"] = matrix(*c.meas_map);
  if (c.channel_bandwidth) j["channel_bandwidth"] = range_list(*c.channel_bandwidth);
  if (c.meas_kernels) j["meas_kernels"] = plain_list(*c.meas_kernels);
  if (c.discriminators) j["discriminators"] = plain_list(*c.discriminators);
  if (c.acquisition_latency) j["acquisition_latency"] = matrix(*c.acquisition_latency);
  if (c.conditional_latency) j["conditional_latency"] = matrix(*c.conditional_latency);
  merge_extra(j, c.extra);
  return j;
}

Json to_json(const NduvStruct& n) {
  Json j = Json::object();
  j["name"] = n.name;
  j["date"] = n.date;
  j["unit"] = n.unit;
  j["value"] = n.value;
  merge_extra(j, n.extra);
  return j;
}

Json to_json(const BackendProperties& p) {
  Json j = Json::object();
  j["backend_name"] = p.backend_name;
  j["backend_version"] = p.backend_version;
  j["last_update_date"] = p.last_update_date;
  Json gates = Json::array();
  for (const auto& g : p.gates) {
    Json gj = Json::object();
    gj["qubits"] = plain_list(g.qubits);
    gj["gate"] = g.gate;
    Json params = Json::array();
    for (const auto& n : g.parameters) params.push_back(to_json(n));
    gj["parameters"] = params;
    merge_extra(gj, g.extra);
    gates.push_back(gj);
  }
  j["gates"] = gates;
  Json qubits = Json::array();
  for (const auto& row : p.qubits) {
    Json r = Json::array();
    for (const auto& n : row) r.push_back(to_json(n));
    qubits.push_back(r);
  }
  j["qubits"] = qubits;
  Json general = Json::array();
  for (const auto& n : p.general) general.push_back(to_json(n));
  j["general"] = general;
  merge_extra(j, p.extra);
  return j;
}

Json to_json(const BackendStatus& s) {
  Json j = Json::object();
  j["backend_name"] = s.backend_name;
  j["backend_version"] = s.backend_version;
  j["operational"] = s.operational;
  j["pending_jobs"] = s.pending_jobs;
  j["status_msg"] = s.status_msg;
  merge_extra(j, s.extra);
  return j;
}

Json to_json(const CmdDefEntry& e) {
  Json j = Json::object();
  j["name"] = e.name;
  j["qubits"] = plain_list(e.qubits);
  Json seq = Json::array();
  for (size_t i = 0; i < e.sequence.size(); ++i) {
    Json ij = to_json(e.sequence[i]);
    // Re-insert parameter tokens ("P3" serialized as "p3").
    for (const auto& slot : e.param_slots) {
      if (slot.instruction != i) continue;
      const char* key = slot.field == ParamSlot::Field::T0         ? "t0"
                        : slot.field == ParamSlot::Field::Duration ? "duration"
                                                                   : "phase";
      ij[key] = "p" + std::to_string(slot.param);
    }
    seq.push_back(ij);
  }
  j[e.sequence_key] = seq;
  merge_extra(j, e.extra);
  return j;
}

Json to_json(const PulseDefaults& d) {
  Json j = Json::object();
  j["qubit_freq_est"] = plain_list(d.qubit_freq_est);
  j["meas_freq_est"] = plain_list(d.meas_freq_est);
  j["buffer"] = d.buffer;
  Json lib = Json::array();
  for (const auto& p : d.pulse_library) lib.push_back(to_json(p));
  j["pulse_library"] = lib;
  Json cd = Json::array();
  for (const auto& e : d.cmd_def) cd.push_back(to_json(e));
  j["cmd_def"] = cd;
  if (d.meas_kernel) j["meas_kernel"] = to_json(*d.meas_kernel);
  if (d.discriminator) j["discriminator"] = to_json(*d.discriminator);
  merge_extra(j, d.extra);
  return j;
}

Json to_json(const JobStatus& s) {
  Json j = Json::object();
  j["job_id"] = s.job_id;
  j["status"] = to_string(s.status);
  j["status_msg"] = s.status_msg;
  merge_extra(j, s.extra);
  return j;
}

Json to_json(const ExpData& d) {
  Json j = Json::object();
  if (d.counts) j["counts"] = *d.counts;
  if (d.memory) j["memory"] = *d.memory;
  if (d.statevector) j["statevector"] = *d.statevector;
  if (d.unitary) j["unitary"] = *d.unitary;
  if (d.snapshots) j["snapshots"] = *d.snapshots;
  merge_extra(j, d.extra);
  return j;
}

Json to_json(const ExperimentResult& r) {
  Json j = Json::object();
  if (r.shots_window) {
    j["shots"] = Json::array({r.shots_window->first, r.shots_window->second});
  } else {
    j["shots"] = r.shots.value_or(0);
  }
  j["status"] = r.status;
  j["success"] = r.success;
  j["header"] = r.header;
  if (r.seed) j["seed"] = *r.seed;
  if (r.meas_return) j["meas_return"] = *r.meas_return;
  j["data"] = to_json(r.data);
  merge_extra(j, r.extra);
  return j;
}

Json to_json(const ResultDocument& r) {
  Json j = Json::object();
  j["backend_name"] = r.backend_name;
  j["backend_version"] = r.backend_version;
  j["qobj_id"] = r.qobj_id;
  j["job_id"] = r.job_id;
  if (r.date) j["date"] = *r.date;
  j["header"] = r.header;
  if (r.status) j["status"] = *r.status;
  j["success"] = r.success;
  Json results = Json::array();
  for (const auto& e : r.results) results.push_back(to_json(e));
  j["results"] = results;
  merge_extra(j, r.extra);
  return j;
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

bool structurally_equal(const Json& a, const Json& b) {
  // Compare through unordered json so object key order is irrelevant.
  nlohmann::json ua = nlohmann::json::parse(a.dump());
  nlohmann::json ub = nlohmann::json::parse(b.dump());
  return ua == ub;
}

}  // namespace qobjsim::model
