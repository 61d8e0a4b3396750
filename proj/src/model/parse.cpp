#include "qobjsim/model/parse.hpp"

#include <algorithm>

#include "qobjsim/common/hex.hpp"
#include "qobjsim/common/iso8601.hpp"
#include "qobjsim/model/channel.hpp"

namespace qobjsim::model {

namespace {

std::vector<long long> to_ll(const std::vector<long long>& v) { return v; }

std::vector<int> to_int_vec(const std::vector<long long>& v) {
  std::vector<int> out(v.begin(), v.end());
  return out;
}

std::vector<Complex> parse_complex_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from_json(j[i], index_path(path, i)));
  }
  return out;
}

std::vector<std::array<double, 2>> parse_range_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected array of [low, high] pairs");
  std::vector<std::array<double, 2>> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& p = j[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(index_path(path, i), "expected [low, high] pair");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

std::vector<std::vector<int>> parse_int_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected array of integer arrays");
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    if (!row.is_array()) throw ParseError(index_path(path, i), "expected integer array");
    std::vector<int> r;
    for (size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number_integer()) {
        throw ParseError(index_path(index_path(path, i), k), "expected integer");
      }
      r.push_back(row[k].get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<long long>> parse_ll_matrix(const Json& j, const std::string& path) {
  auto m = parse_int_matrix(j, path);
  std::vector<std::vector<long long>> out;
  for (auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

void check_hex_field(const std::string& v, const std::string& path) {
  if (!is_hex_literal(v)) throw ParseError(path, "expected hex literal such as \"0x3\"");
}

/// Numeric field that may hold a "PX" parameter token inside a cmd_def.
long long read_int_or_token(Reader& r, const std::string& key, InstructionContext& ctx,
                            ParamSlot::Field field, bool required, long long dflt = 0) {
  const Json* v = required ? &r.require(key) : r.optional(key);
  if (!v) return dflt;
  if (v->is_number_integer()) return v->get<long long>();
  if (v->is_string() && ctx.allow_param_tokens && ctx.param_slots) {
    std::string s = v->get<std::string>();
    if ((s.size() >= 2) && (s[0] == 'p' || s[0] == 'P')) {
      ctx.param_slots->push_back(
          {ctx.instruction_index, field, std::stoi(s.substr(1))});
      return 0;
    }
  }
  r.fail(key, "expected integer");
}

double read_double_or_token(Reader& r, const std::string& key, InstructionContext& ctx,
                            ParamSlot::Field field) {
  const Json& v = r.require(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && ctx.allow_param_tokens && ctx.param_slots) {
    std::string s = v.get<std::string>();
    if ((s.size() >= 2) && (s[0] == 'p' || s[0] == 'P')) {
      bool digits = std::all_of(s.begin() + 1, s.end(),
                                [](char c) { return c >= '0' && c <= '9'; });
      if (digits) {
        ctx.param_slots->push_back(
            {ctx.instruction_index, field, std::stoi(s.substr(1))});
        return 0.0;
      }
    }
  }
  r.fail(key, "expected number");
}

Bfunc parse_bfunc(Reader& r) {
  Bfunc b;
  b.mask = r.require_string("mask");
  check_hex_field(b.mask, r.member_path("mask"));
  b.relation = r.require_string("relation");
  if (b.relation != "==" && b.relation != "!=") {
    r.fail("relation", "expected \"==\" or \"!=\"");
  }
  b.val = r.require_string("val");
  check_hex_field(b.val, r.member_path("val"));
  // §3.1.1 defines "register" as a scalar but the worked examples also write
  // it as a one-element list.
  const Json& reg = r.require("register");
  if (reg.is_number_integer()) {
    b.reg = reg.get<long long>();
  } else if (reg.is_array() && reg.size() == 1 && reg[0].is_number_integer()) {
    b.reg = reg[0].get<long long>();
    b.reg_was_list = true;
  } else if (reg.is_array() && reg.size() > 1) {
    r.fail("register", "bfunc writes a single register slot");
  } else {
    r.fail("register", "expected register slot index");
  }
  b.memory = r.optional_int("memory");
  b.extra = r.finish();
  return b;
}

}  // namespace

const char* instruction_name(const Instruction& instr) {
  struct Visitor {
    const char* operator()(const Bfunc&) { return "bfunc"; }
    const char* operator()(const Copy&) { return "copy"; }
    const char* operator()(const Gate& g) { return g.name.c_str(); }
    const char* operator()(const Barrier&) { return "barrier"; }
    const char* operator()(const Reset&) { return "reset"; }
    const char* operator()(const Measure&) { return "measure"; }
    const char* operator()(const Snapshot&) { return "snapshot"; }
    const char* operator()(const DrivePulse& p) { return p.name.c_str(); }
    const char* operator()(const FrameChange&) { return "fc"; }
    const char* operator()(const PersistentValue&) { return "pv"; }
    const char* operator()(const Acquire&) { return "acquire"; }
  };
  return std::visit(Visitor{}, instr);
}

int CmdDefEntry::max_param_index() const {
  int m = -1;
  for (const auto& s : param_slots) m = std::max(m, s.param);
  return m;
}

std::map<std::string, double> HamiltonianDict::vars_map() const {
  std::map<std::string, double> out;
  for (auto it = vars.begin(); it != vars.end(); ++it) {
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

std::map<std::string, double> HamiltonianDict::osc_map() const {
  std::map<std::string, double> out;
  for (auto it = osc.begin(); it != osc.end(); ++it) {
    out[it.key()] = it.value().get<double>();
  }
  return out;
}

const char* to_string(QobjType t) { return t == QobjType::QASM ? "QASM" : "PULSE"; }

const char* to_string(JobState s) {
  switch (s) {
    case JobState::Error: return "ERROR";
    case JobState::Queued: return "QUEUED";
    case JobState::Initializing: return "INITIALIZING";
    case JobState::Running: return "RUNNING";
    case JobState::Cancelled: return "CANCELLED";
    case JobState::Done: return "DONE";
  }
  return "ERROR";
}

std::optional<JobState> job_state_from_string(const std::string& s) {
  if (s == "ERROR") return JobState::Error;
  if (s == "QUEUED") return JobState::Queued;
  if (s == "INITIALIZING") return JobState::Initializing;
  if (s == "RUNNING") return JobState::Running;
  if (s == "CANCELLED") return JobState::Cancelled;
  if (s == "DONE") return JobState::Done;
  return std::nullopt;
}

UserConfig UserConfig::overridden_by(const UserConfig& exp) const {
  UserConfig out = *this;
  if (exp.shots) out.shots = exp.shots;
  if (exp.memory_slots) out.memory_slots = exp.memory_slots;
  if (exp.seed) out.seed = exp.seed;
  if (exp.max_credits) out.max_credits = exp.max_credits;
  if (exp.meas_level) out.meas_level = exp.meas_level;
  if (exp.pulse_library) out.pulse_library = exp.pulse_library;
  if (exp.memory_slot_size) out.memory_slot_size = exp.memory_slot_size;
  if (exp.meas_return) out.meas_return = exp.meas_return;
  if (exp.qubit_lo_freq) out.qubit_lo_freq = exp.qubit_lo_freq;
  if (exp.meas_lo_freq) out.meas_lo_freq = exp.meas_lo_freq;
  if (exp.rep_time) out.rep_time = exp.rep_time;
  for (auto it = exp.extra.begin(); it != exp.extra.end(); ++it) {
    out.extra[it.key()] = it.value();
  }
  return out;
}

Instruction parse_instruction(const Json& j, const std::string& path,
                              InstructionContext& ctx, const ParseOptions& opts,
                              ParseLog* log) {
  Reader r(j, path, opts, log);
  std::string name = r.require_string("name");

  if (ctx.type == QobjType::QASM) {
    if (name == "bfunc") return parse_bfunc(r);
    if (name == "copy") {
      Copy c;
      c.register_orig = r.require_int("register_orig");
      c.register_copy = to_ll(r.require_int_list("register_copy"));
      c.extra = r.finish();
      return c;
    }
    if (name == "barrier") {
      Barrier b;
      b.qubits = r.require_int_list("qubits");
      b.extra = r.finish();
      return b;
    }
    if (name == "reset") {
      Reset rs;
      rs.qubits = r.require_int_list("qubits");
      rs.extra = r.finish();
      return rs;
    }
    if (name == "measure") {
      Measure m;
      m.qubits = r.require_int_list("qubits");
      m.memory = r.require_int_list("memory");
      m.reg = r.optional_int_list("register");
      m.extra = r.finish();
      return m;
    }
    if (name == "snapshot") {
      Snapshot s;
      s.label = r.require_string("label");
      s.type = r.require_string("type");
      s.extra = r.finish();
      return s;
    }
    Gate g;
    g.name = name;
    g.qubits = r.require_int_list("qubits");
    if (r.has("params")) g.params = r.require_double_list("params");
    g.texparams = r.optional_string_list("texparams");
    g.conditional = r.optional_int("conditional");
    g.extra = r.finish();
    return g;
  }

  // PULSE experiment instruction set.
  if (name == "fc") {
    FrameChange f;
    f.t0 = read_int_or_token(r, "t0", ctx, ParamSlot::Field::T0, true);
    f.ch = r.require_string("ch");
    f.phase = read_double_or_token(r, "phase", ctx, ParamSlot::Field::Phase);
    f.conditional = r.optional_int("conditional");
    f.extra = r.finish();
    return f;
  }
  if (name == "pv") {
    PersistentValue p;
    p.t0 = read_int_or_token(r, "t0", ctx, ParamSlot::Field::T0, true);
    p.ch = r.require_string("ch");
    p.val = complex_from_json(r.require("val"), r.member_path("val"));
    p.extra = r.finish();
    return p;
  }
  if (name == "acquire") {
    Acquire a;
    a.t0 = read_int_or_token(r, "t0", ctx, ParamSlot::Field::T0, true);
    a.duration = read_int_or_token(r, "duration", ctx, ParamSlot::Field::Duration, true);
    // Inside a cmd_def the qubits/memory_slot lists are appended by the
    // lowering step, so they are optional there.
    if (ctx.allow_param_tokens) {
      if (r.has("qubits")) a.qubits = r.require_int_list("qubits");
      if (r.has("memory_slot")) a.memory_slot = r.require_int_list("memory_slot");
    } else {
      a.qubits = r.require_int_list("qubits");
      a.memory_slot = r.require_int_list("memory_slot");
    }
    a.register_slot = r.optional_int_list("register_slot");
    if (r.has("kernels")) {
      const Json& ks = r.require("kernels");
      std::vector<KernelSpec> v;
      for (size_t i = 0; i < ks.size(); ++i) {
        v.push_back(parse_kernel_spec(ks[i], index_path(r.member_path("kernels"), i), opts, log));
      }
      a.kernels = std::move(v);
    }
    if (r.has("discriminators")) {
      const Json& ds = r.require("discriminators");
      std::vector<DiscriminatorSpec> v;
      for (size_t i = 0; i < ds.size(); ++i) {
        v.push_back(
            parse_kernel_spec(ds[i], index_path(r.member_path("discriminators"), i), opts, log));
      }
      a.discriminators = std::move(v);
    }
    a.extra = r.finish();
    return a;
  }
  if (name == "snapshot") {
    Snapshot s;
    s.label = r.require_string("label");
    s.type = r.require_string("type");
    s.t0 = r.optional_int("t0");
    s.extra = r.finish();
    return s;
  }
  if (name == "bfunc") return parse_bfunc(r);
  if (name == "copy") {
    Copy c;
    c.register_orig = r.require_int("register_orig");
    c.register_copy = to_ll(r.require_int_list("register_copy"));
    c.extra = r.finish();
    return c;
  }
  DrivePulse p;
  p.name = name;
  p.t0 = read_int_or_token(r, "t0", ctx, ParamSlot::Field::T0, true);
  p.ch = r.require_string("ch");
  p.conditional = r.optional_int("conditional");
  p.extra = r.finish();
  return p;
}

UserConfig parse_user_config(const Json& j, const std::string& path,
                             const ParseOptions& opts, ParseLog* log) {
  Reader r(j, path, opts, log);
  UserConfig c;
  c.shots = r.optional_int("shots");
  c.memory_slots = r.optional_int("memory_slots");
  c.seed = r.optional_int("seed");
  c.max_credits = r.optional_int("max_credits");
  if (r.has("meas_level")) {
    long long lvl = r.require_int("meas_level");
    if (lvl < 0 || lvl > 2) r.fail("meas_level", "expected 0, 1 or 2");
    c.meas_level = static_cast<int>(lvl);
  }
  if (r.has("pulse_library")) {
    c.pulse_library = parse_pulse_library(r.require("pulse_library"),
                                          r.member_path("pulse_library"), opts, log);
  }
  c.memory_slot_size = r.optional_int("memory_slot_size");
  if (r.has("meas_return")) {
    std::string mr = r.require_string("meas_return");
    if (mr != "single" && mr != "avg") r.fail("meas_return", "expected \"single\" or \"avg\"");
    c.meas_return = mr;
  }
  if (r.has("qubit_lo_freq")) c.qubit_lo_freq = r.require_double_list("qubit_lo_freq");
  if (r.has("meas_lo_freq")) c.meas_lo_freq = r.require_double_list("meas_lo_freq");
  c.rep_time = r.optional_double("rep_time");
  c.extra = r.finish();
  return c;
}

Qobj parse_qobj(const std::string& bytes, const ParseOptions& opts, ParseLog* log) {
  Json j = Json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw ParseError("", "invalid JSON");
  return parse_qobj(j, opts, log);
}

Qobj parse_qobj(const Json& j, const ParseOptions& opts, ParseLog* log) {
  Reader r(j, "", opts, log);
  Qobj q;
  q.qobj_id = r.require_string("qobj_id");
  std::string type = r.require_string("type");
  if (type == "QASM") {
    q.type = QobjType::QASM;
  } else if (type == "PULSE") {
    q.type = QobjType::PULSE;
  } else {
    r.fail("type", "expected \"QASM\" or \"PULSE\"");
  }
  q.schema_version = r.require_string("schema_version");
  if (auto h = r.optional_object("header")) q.header = *h;
  q.config = parse_user_config(r.require("config"), "/config", opts, log);

  const Json& exps = r.require("experiments");
  if (!exps.is_array()) r.fail("experiments", "expected array");
  for (size_t e = 0; e < exps.size(); ++e) {
    std::string epath = index_path("/experiments", e);
    Reader er(exps[e], epath, opts, log);
    Experiment exp;
    if (auto h = er.optional_object("header")) exp.header = *h;
    if (er.has("config")) {
      exp.config = parse_user_config(er.require("config"), epath + "/config", opts, log);
    }
    const Json& instrs = er.require("instructions");
    if (!instrs.is_array()) er.fail("instructions", "expected array");
    for (size_t i = 0; i < instrs.size(); ++i) {
      InstructionContext ctx;
      ctx.type = q.type;
      exp.instructions.push_back(
          parse_instruction(instrs[i], epath + "/instructions/" + std::to_string(i), ctx,
                            opts, log));
    }
    exp.extra = er.finish();
    q.experiments.push_back(std::move(exp));
  }
  q.extra = r.finish();
  return q;
}

GateConfig parse_gate_config(const Json& j, const std::string& path, const ParseOptions& opts,
                             ParseLog* log) {
  Reader r(j, path, opts, log);
  GateConfig g;
  g.name = r.require_string("name");
  g.parameters = r.require_string_list("parameters");
  g.coupling_map = parse_int_matrix(r.require("coupling_map"), r.member_path("coupling_map"));
  g.qasm_def = r.require_string("qasm_def");
  g.conditional = r.optional_bool("conditional");
  if (r.has("latency_map")) {
    g.latency_map = parse_int_matrix(r.require("latency_map"), r.member_path("latency_map"));
  }
  g.description = r.optional_string("description");
  g.extra = r.finish();
  return g;
}

HamiltonianDict parse_hamiltonian_dict(const Json& j, const std::string& path,
                                       const ParseOptions& opts, ParseLog* log) {
  Reader r(j, path, opts, log);
  HamiltonianDict h;
  h.h_latex = r.require_string("h_latex");
  if (r.has("h_str")) h.h_str = r.require_string_list("h_str");
  for (const char* key : {"vars", "osc"}) {
    if (!r.has(key)) continue;
    Json obj = r.require_object(key);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!it.value().is_number()) {
        throw ParseError(r.member_path(key) + "/" + it.key(), "expected number");
      }
    }
    (std::string(key) == "vars" ? h.vars : h.osc) = obj;
  }
  r.finish();  // ham dicts carry no extension fields worth preserving
  return h;
}

BackendConfiguration parse_backend_configuration(const Json& j, const ParseOptions& opts,
                                                 ParseLog* log) {
  Reader r(j, "", opts, log);
  BackendConfiguration c;
  c.backend_name = r.require_string("backend_name");
  c.backend_version = r.require_string("backend_version");
  c.n_qubits = static_cast<int>(r.require_int("n_qubits"));
  c.basis_gates = r.require_string_list("basis_gates");
  if (r.has("coupling_map")) {
    auto m = parse_int_matrix(r.require("coupling_map"), "/coupling_map");
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != 2) {
        throw ParseError(index_path("/coupling_map", i), "expected [control, target] pair");
      }
      c.coupling_map.emplace_back(m[i][0], m[i][1]);
    }
  }
  if (r.has("gates")) {
    const Json& gs = r.require("gates");
    if (!gs.is_array()) r.fail("gates", "expected array");
    for (size_t i = 0; i < gs.size(); ++i) {
      c.gates.push_back(parse_gate_config(gs[i], index_path("/gates", i), opts, log));
    }
  }
  c.local = r.require_bool("local");
  c.simulator = r.require_bool("simulator");
  c.conditional = r.require_bool("conditional");
  c.configurable = r.optional_bool("configurable").value_or(false);
  c.open_pulse = r.require_bool("open_pulse");
  c.n_registers = r.optional_int("n_registers");
  if (r.has("register_map")) {
    c.register_map = parse_int_matrix(r.require("register_map"), "/register_map");
  }
  if (r.has("online_date")) {
    c.online_date = r.require_string("online_date");
    if (!is_iso8601(*c.online_date)) r.fail("online_date", "expected ISO 8601 date");
  }
  c.display_name = r.optional_string("display_name");
  c.sample_name = r.optional_string("sample_name");
  c.description = r.optional_string("description");
  c.url = r.optional_string("url");
  c.tags = r.optional_string_list("tags");

  c.n_uchannels = r.optional_int("n_uchannels");
  if (r.has("hamiltonian")) {
    c.hamiltonian =
        parse_hamiltonian_dict(r.require("hamiltonian"), "/hamiltonian", opts, log);
  }
  if (r.has("u_channel_lo")) {
    const Json& u = r.require("u_channel_lo");
    if (!u.is_array()) r.fail("u_channel_lo", "expected array");
    std::vector<std::vector<UChannelLoTerm>> all;
    for (size_t i = 0; i < u.size(); ++i) {
      const Json& terms = u[i];
      std::string tpath = index_path("/u_channel_lo", i);
      if (!terms.is_array()) throw ParseError(tpath, "expected array");
      std::vector<UChannelLoTerm> row;
      for (size_t k = 0; k < terms.size(); ++k) {
        Reader tr(terms[k], index_path(tpath, k), opts, log);
        UChannelLoTerm t;
        t.q = static_cast<int>(tr.require_int("q"));
        t.scale = complex_from_json(tr.require("scale"), tr.member_path("scale"));
        tr.finish();
        row.push_back(t);
      }
      all.push_back(std::move(row));
    }
    c.u_channel_lo = std::move(all);
  }
  if (r.has("meas_levels")) c.meas_levels = to_int_vec(r.require_int_list("meas_levels"));
  if (r.has("qubit_lo_range")) {
    c.qubit_lo_range = parse_range_list(r.require("qubit_lo_range"), "/qubit_lo_range");
  }
  if (r.has("meas_lo_range")) {
    c.meas_lo_range = parse_range_list(r.require("meas_lo_range"), "/meas_lo_range");
  }
  c.dt = r.optional_double("dt");
  c.dtm = r.optional_double("dtm");
  if (r.has("rep_times")) c.rep_times = r.require_double_list("rep_times");
  if (r.has("meas_map")) c.meas_map = parse_int_matrix(r.require("meas_map"), "/meas_map");
  if (r.has("channel_bandwidth")) {
    c.channel_bandwidth =
        parse_range_list(r.require("channel_bandwidth"), "/channel_bandwidth");
  }
  c.meas_kernels = r.optional_string_list("meas_kernels");
  c.discriminators = r.optional_string_list("discriminators");
  if (r.has("acquisition_latency")) {
    c.acquisition_latency =
        parse_ll_matrix(r.require("acquisition_latency"), "/acquisition_latency");
  }
  if (r.has("conditional_latency")) {
    c.conditional_latency =
        parse_ll_matrix(r.require("conditional_latency"), "/conditional_latency");
  }
  c.extra = r.finish();
  return c;
}

NduvStruct parse_nduv(const Json& j, const std::string& path, const ParseOptions& opts,
                      ParseLog* log) {
  Reader r(j, path, opts, log);
  NduvStruct n;
  n.name = r.require_string("name");
  n.date = r.require_string("date");
  if (!is_iso8601(n.date)) r.fail("date", "expected ISO 8601 date");
  n.unit = r.require_string("unit");
  n.value = r.require_double("value");
  n.extra = r.finish();
  return n;
}

BackendProperties parse_backend_properties(const Json& j, const ParseOptions& opts,
                                           ParseLog* log) {
  Reader r(j, "", opts, log);
  BackendProperties p;
  p.backend_name = r.require_string("backend_name");
  p.backend_version = r.require_string("backend_version");
  p.last_update_date = r.require_string("last_update_date");
  if (!is_iso8601(p.last_update_date)) r.fail("last_update_date", "expected ISO 8601 date");
  const Json& gs = r.require("gates");
  if (!gs.is_array()) r.fail("gates", "expected array");
  for (size_t i = 0; i < gs.size(); ++i) {
    std::string gpath = index_path("/gates", i);
    Reader gr(gs[i], gpath, opts, log);
    GateProp gp;
    gp.qubits = to_int_vec(gr.require_int_list("qubits"));
    gp.gate = gr.require_string("gate");
    const Json& params = gr.require("parameters");
    if (!params.is_array()) gr.fail("parameters", "expected array");
    for (size_t k = 0; k < params.size(); ++k) {
      gp.parameters.push_back(
          parse_nduv(params[k], index_path(gpath + "/parameters", k), opts, log));
    }
    gp.extra = gr.finish();
    p.gates.push_back(std::move(gp));
  }
  const Json& qs = r.require("qubits");
  if (!qs.is_array()) r.fail("qubits", "expected array");
  for (size_t i = 0; i < qs.size(); ++i) {
    const Json& row = qs[i];
    std::string qpath = index_path("/qubits", i);
    if (!row.is_array()) throw ParseError(qpath, "expected array");
    std::vector<NduvStruct> nn;
    for (size_t k = 0; k < row.size(); ++k) {
      nn.push_back(parse_nduv(row[k], index_path(qpath, k), opts, log));
    }
    p.qubits.push_back(std::move(nn));
  }
  const Json& gen = r.require("general");
  if (!gen.is_array()) r.fail("general", "expected array");
  for (size_t i = 0; i < gen.size(); ++i) {
    p.general.push_back(parse_nduv(gen[i], index_path("/general", i), opts, log));
  }
  p.extra = r.finish();
  return p;
}

BackendStatus parse_backend_status(const Json& j, const ParseOptions& opts, ParseLog* log) {
  Reader r(j, "", opts, log);
  BackendStatus s;
  s.backend_name = r.require_string("backend_name");
  s.backend_version = r.require_string("backend_version");
  s.operational = r.require_bool("operational");
  s.pending_jobs = r.optional_int("pending_jobs").value_or(0);
  s.status_msg = r.require_string("status_msg");
  s.extra = r.finish();
  return s;
}

PulseLibEntry parse_pulse_lib_entry(const Json& j, const std::string& path,
                                    const ParseOptions& opts, ParseLog* log) {
  Reader r(j, path, opts, log);
  PulseLibEntry e;
  e.name = r.require_string("name");
  e.samples = parse_complex_list(r.require("samples"), r.member_path("samples"));
  e.extra = r.finish();
  return e;
}

std::vector<PulseLibEntry> parse_pulse_library(const Json& j, const std::string& path,
                                               const ParseOptions& opts, ParseLog* log) {
  if (!j.is_array()) throw ParseError(path, "expected array of pulses");
  std::vector<PulseLibEntry> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_pulse_lib_entry(j[i], index_path(path, i), opts, log));
  }
  return out;
}

KernelSpec parse_kernel_spec(const Json& j, const std::string& path, const ParseOptions& opts,
                             ParseLog* log) {
  Reader r(j, path, opts, log);
  KernelSpec k;
  k.name = r.require_string("name");
  if (r.has("params")) {
    const Json& p = r.require("params");
    if (!p.is_array()) r.fail("params", "expected array");
    // Kernel parameters are free-form; only numeric ones are modeled.
    for (size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number()) {
        throw ParseError(index_path(r.member_path("params"), i), "expected number");
      }
      k.params.push_back(p[i].get<double>());
    }
  }
  k.extra = r.finish();
  return k;
}

CmdDefEntry parse_cmd_def_entry(const Json& j, const std::string& path,
                                const ParseOptions& opts, ParseLog* log) {
  Reader r(j, path, opts, log);
  CmdDefEntry e;
  e.name = r.require_string("name");
  e.qubits = to_int_vec(r.require_int_list("qubits"));
  const char* key = r.has("sequence") ? "sequence" : "instructions";
  e.sequence_key = key;
  const Json& seq = r.require(key);
  if (!seq.is_array()) r.fail(key, "expected array");
  for (size_t i = 0; i < seq.size(); ++i) {
    InstructionContext ctx;
    ctx.type = QobjType::PULSE;
    ctx.allow_param_tokens = true;
    ctx.param_slots = &e.param_slots;
    ctx.instruction_index = i;
    e.sequence.push_back(parse_instruction(seq[i], index_path(r.member_path(key), i), ctx,
                                           opts, log));
  }
  e.extra = r.finish();
  return e;
}

std::vector<CmdDefEntry> parse_cmd_def(const Json& j, const std::string& path,
                                       const ParseOptions& opts, ParseLog* log) {
  if (!j.is_array()) throw ParseError(path, "expected array of command definitions");
  std::vector<CmdDefEntry> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_cmd_def_entry(j[i], index_path(path, i), opts, log));
  }
  return out;
}

PulseDefaults parse_pulse_defaults(const Json& j, const ParseOptions& opts, ParseLog* log) {
  Reader r(j, "", opts, log);
  PulseDefaults d;
  d.qubit_freq_est = r.require_double_list("qubit_freq_est");
  d.meas_freq_est = r.require_double_list("meas_freq_est");
  d.buffer = r.require_int("buffer");
  d.pulse_library =
      parse_pulse_library(r.require("pulse_library"), "/pulse_library", opts, log);
  d.cmd_def = parse_cmd_def(r.require("cmd_def"), "/cmd_def", opts, log);
  if (r.has("meas_kernel")) {
    d.meas_kernel = parse_kernel_spec(r.require("meas_kernel"), "/meas_kernel", opts, log);
  }
  if (r.has("discriminator")) {
    d.discriminator =
        parse_kernel_spec(r.require("discriminator"), "/discriminator", opts, log);
  }
  d.extra = r.finish();
  return d;
}

JobStatus parse_job_status(const Json& j, const ParseOptions& opts, ParseLog* log) {
  Reader r(j, "", opts, log);
  JobStatus s;
  s.job_id = r.require_string("job_id");
  std::string st = r.require_string("status");
  auto state = job_state_from_string(st);
  if (!state) r.fail("status", "unknown job status \"" + st + "\"");
  s.status = *state;
  s.status_msg = r.require_string("status_msg");
  s.extra = r.finish();
  return s;
}

ExperimentResult parse_experiment_result(const Json& j, const std::string& path,
                                         const ParseOptions& opts, ParseLog* log) {
  Reader r(j, path, opts, log);
  ExperimentResult e;
  const Json& shots = r.require("shots");
  if (shots.is_number_integer()) {
    e.shots = shots.get<long long>();
  } else if (shots.is_array() && shots.size() == 2 && shots[0].is_number_integer() &&
             shots[1].is_number_integer()) {
    e.shots_window = {shots[0].get<long long>(), shots[1].get<long long>()};
  } else {
    r.fail("shots", "expected shot count or [n1, n2] window");
  }
  e.status = r.require_string("status");
  e.success = r.require_bool("success");
  if (auto h = r.optional_object("header")) e.header = *h;
  e.seed = r.optional_int("seed");
  if (r.has("meas_return")) {
    std::string mr = r.require_string("meas_return");
    if (mr != "single" && mr != "avg") r.fail("meas_return", "expected \"single\" or \"avg\"");
    e.meas_return = mr;
  }
  Reader dr(r.require("data"), r.member_path("data"), opts, log);
  if (dr.has("counts")) {
    Json counts = dr.require_object("counts");
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (!is_hex_literal(it.key())) {
        throw ParseError(dr.member_path("counts") + "/" + it.key(), "counts key is not hex");
      }
      if (!it.value().is_number_integer() || it.value().get<long long>() < 0) {
        throw ParseError(dr.member_path("counts") + "/" + it.key(),
                         "expected non-negative count");
      }
    }
    e.data.counts = counts;
  }
  if (dr.has("memory")) e.data.memory = dr.require("memory");
  if (dr.has("statevector")) e.data.statevector = dr.require("statevector");
  if (dr.has("unitary")) e.data.unitary = dr.require("unitary");
  if (dr.has("snapshots")) e.data.snapshots = dr.require_object("snapshots");
  e.data.extra = dr.finish();
  e.extra = r.finish();
  return e;
}

ResultDocument parse_result_document(const Json& j, const ParseOptions& opts, ParseLog* log) {
  Reader r(j, "", opts, log);
  ResultDocument d;
  d.backend_name = r.require_string("backend_name");
  d.backend_version = r.require_string("backend_version");
  d.qobj_id = r.require_string("qobj_id");
  d.job_id = r.require_string("job_id");
  if (r.has("date")) {
    d.date = r.require_string("date");
    if (!is_iso8601(*d.date)) r.fail("date", "expected ISO 8601 date");
  }
  if (auto h = r.optional_object("header")) d.header = *h;
  d.status = r.optional_string("status");
  d.success = r.require_bool("success");
  const Json& results = r.require("results");
  if (!results.is_array()) r.fail("results", "expected array");
  for (size_t i = 0; i < results.size(); ++i) {
    d.results.push_back(
        parse_experiment_result(results[i], index_path("/results", i), opts, log));
  }
  d.extra = r.finish();
  return d;
}

}  // namespace qobjsim::model
