#include "qobjsim/qasm/engine.hpp"

#include <algorithm>

#include "qobjsim/common/hex.hpp"

namespace qobjsim::qasm {

using model::Instruction;

namespace {

using Complex = std::complex<double>;

Json statevector_json(const Statevector& sv) {
  Json out = Json::array();
  for (const auto& a : sv.amplitudes()) out.push_back(complex_to_json(a));
  return out;
}

std::vector<int> noise_targets(const model::Experiment& exp, int n_qubits) {
  if (exp.header.contains("data_qubits") && exp.header["data_qubits"].is_array()) {
    std::vector<int> out;
    for (const auto& q : exp.header["data_qubits"]) {
      if (q.is_number_integer()) out.push_back(q.get<int>());
    }
    return out;
  }
  std::vector<int> out(n_qubits);
  for (int i = 0; i < n_qubits; ++i) out[i] = i;
  return out;
}

struct ShotMachine {
  const RunContext& ctx;
  const model::Experiment& exp;
  int n;
  std::vector<int> noise_qubits;
  ShotRng rng;
  Statevector sv;
  ClassicalState cls;
  bool in_gate_run = false;
  std::map<std::string, Matrix> gate_cache;  // keyed by name + params

  ShotMachine(const RunContext& ctx_, const model::Experiment& exp_, int n_,
              std::vector<int> noise_qubits_, long long shot)
      : ctx(ctx_),
        exp(exp_),
        n(n_),
        noise_qubits(std::move(noise_qubits_)),
        rng(ctx_.seed, ctx_.experiment_index, static_cast<uint64_t>(shot)),
        sv(n_) {
    cls.memory.assign(static_cast<size_t>(ctx.memory_slots), 0);
    cls.registers.assign(static_cast<size_t>(ctx.n_registers), 0);
  }

  bool register_bit(long long idx) const {
    if (idx < 0 || static_cast<size_t>(idx) >= cls.registers.size()) return false;
    return cls.registers[idx] != 0;
  }

  void flush_noise_layer() {
    if (!in_gate_run) return;
    in_gate_run = false;
    if (ctx.bit_flip_probability <= 0.0) return;
    static const Matrix x = [] {
      Matrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }();
    for (int q : noise_qubits) {
      if (rng.bernoulli(ctx.bit_flip_probability)) sv.apply_1q(x, q);
    }
  }

  const Matrix& gate_for(const model::Gate& g) {
    std::string key = g.name;
    if (g.params) {
      for (double p : *g.params) key += "," + std::to_string(p);
    }
    auto it = gate_cache.find(key);
    if (it != gate_cache.end()) return it->second;
    Matrix m = gate_matrix(g.name, g.params.value_or(std::vector<double>{}), ctx.defs);
    return gate_cache.emplace(key, std::move(m)).first->second;
  }

  void apply(const model::Gate& g) {
    in_gate_run = true;
    if (g.conditional && !register_bit(*g.conditional)) return;
    const Matrix& m = gate_for(g);
    int arity = gate_arity(g.name, ctx.defs);
    if (static_cast<size_t>(arity) != g.qubits.size()) {
      throw EngineError("gate '" + g.name + "' expects " + std::to_string(arity) +
                        " qubits, got " + std::to_string(g.qubits.size()));
    }
    std::vector<int> qubits(g.qubits.begin(), g.qubits.end());
    sv.apply_gate(m, qubits);
  }

  void apply(const model::Measure& m) {
    for (size_t i = 0; i < m.qubits.size(); ++i) {
      int outcome = sv.measure(static_cast<int>(m.qubits[i]), rng);
      if (static_cast<size_t>(m.memory[i]) < cls.memory.size()) {
        cls.memory[m.memory[i]] = static_cast<uint8_t>(outcome);
      }
      if (m.reg && static_cast<size_t>((*m.reg)[i]) < cls.registers.size()) {
        cls.registers[(*m.reg)[i]] = static_cast<uint8_t>(outcome);
      }
    }
  }

  void apply(const model::Bfunc& b) {
    uint64_t mask = hex_to_u64(b.mask);
    uint64_t val = hex_to_u64(b.val);
    uint64_t regs = cls.register_value();
    bool result = (regs & mask) == val;
    if (b.relation == "!=") result = !result;
    if (b.reg < 0 || static_cast<size_t>(b.reg) >= cls.registers.size()) {
      throw EngineError("bfunc register " + std::to_string(b.reg) + " out of range");
    }
    cls.registers[b.reg] = result ? 1 : 0;
    if (b.memory && static_cast<size_t>(*b.memory) < cls.memory.size()) {
      cls.memory[*b.memory] = result ? 1 : 0;
    }
  }

  void apply(const model::Copy& c) {
    if (c.register_orig < 0 || static_cast<size_t>(c.register_orig) >= cls.registers.size()) {
      throw EngineError("copy source register out of range");
    }
    uint8_t v = cls.registers[c.register_orig];
    for (long long dst : c.register_copy) {
      if (dst < 0 || static_cast<size_t>(dst) >= cls.registers.size()) {
        throw EngineError("copy destination register out of range");
      }
      cls.registers[dst] = v;
    }
  }
};

}  // namespace

uint64_t ClassicalState::register_value() const {
  uint64_t v = 0;
  for (size_t i = 0; i < registers.size() && i < 64; ++i) {
    if (registers[i]) v |= 1ULL << i;
  }
  return v;
}

int experiment_width(const model::Experiment& exp) {
  long long width = 0;
  auto see = [&width](const std::vector<long long>& qubits) {
    for (long long q : qubits) width = std::max(width, q + 1);
  };
  for (const auto& instr : exp.instructions) {
    if (const auto* g = std::get_if<model::Gate>(&instr)) see(g->qubits);
    if (const auto* b = std::get_if<model::Barrier>(&instr)) see(b->qubits);
    if (const auto* r = std::get_if<model::Reset>(&instr)) see(r->qubits);
    if (const auto* m = std::get_if<model::Measure>(&instr)) see(m->qubits);
  }
  return static_cast<int>(std::max(width, 1LL));
}

std::map<std::string, ParsedGateDef> build_def_table(
    const std::vector<model::GateConfig>& gates) {
  std::map<std::string, ParsedGateDef> defs;
  for (const auto& g : gates) {
    if (g.qasm_def.empty()) continue;
    ParsedGateDef def = parse_qasm_def(g.qasm_def);
    defs[g.name] = std::move(def);
  }
  return defs;
}

model::ExperimentResult run_experiment(const model::Experiment& exp, const RunContext& ctx,
                                       std::vector<std::string>* warnings) {
  int n = ctx.n_qubits >= 0 ? ctx.n_qubits : experiment_width(exp);
  if (ctx.memory_slots > 64) {
    throw EngineError("more than 64 memory slots are not supported");
  }
  std::vector<int> noise_qubits = noise_targets(exp, n);

  std::map<uint64_t, long long> counts;
  std::vector<std::string> memory_list;
  memory_list.reserve(static_cast<size_t>(ctx.shots));
  Json snapshots = Json::object();
  bool warned_snapshot = false;

  for (long long shot = 0; shot < ctx.shots; ++shot) {
    if (ctx.cancelled && ctx.cancelled()) throw RunCancelled();

    ShotMachine machine(ctx, exp, n, noise_qubits, shot);
    for (const auto& instr : exp.instructions) {
      bool is_gate = std::holds_alternative<model::Gate>(instr);
      if (!is_gate) machine.flush_noise_layer();

      if (const auto* g = std::get_if<model::Gate>(&instr)) {
        machine.apply(*g);
      } else if (const auto* m = std::get_if<model::Measure>(&instr)) {
        machine.apply(*m);
      } else if (const auto* r = std::get_if<model::Reset>(&instr)) {
        for (long long q : r->qubits) machine.sv.reset(static_cast<int>(q), machine.rng);
      } else if (std::get_if<model::Barrier>(&instr)) {
        // No effect on the state.
      } else if (const auto* b = std::get_if<model::Bfunc>(&instr)) {
        machine.apply(*b);
      } else if (const auto* c = std::get_if<model::Copy>(&instr)) {
        machine.apply(*c);
      } else if (const auto* s = std::get_if<model::Snapshot>(&instr)) {
        if (shot == 0) {
          snapshots[s->type][s->label] = statevector_json(machine.sv);
        } else if (!warned_snapshot) {
          warned_snapshot = true;
          if (warnings) {
            warnings->push_back("snapshot '" + s->label +
                                "' with shots > 1 records the first shot only");
          }
        }
      } else {
        throw EngineError(std::string("instruction '") + model::instruction_name(instr) +
                          "' is not a QASM sequence command");
      }
    }
    machine.flush_noise_layer();

    uint64_t value = 0;
    for (size_t i = 0; i < machine.cls.memory.size(); ++i) {
      if (machine.cls.memory[i]) value |= 1ULL << i;
    }
    counts[value] += 1;
    memory_list.push_back(encode_hex(machine.cls.memory));
  }

  model::ExperimentResult result;
  result.shots = ctx.shots;
  result.status = "DONE";
  result.success = true;
  result.header = exp.header;
  result.seed = static_cast<long long>(ctx.seed);
  Json counts_json = Json::object();
  for (const auto& [value, count] : counts) {
    std::vector<uint8_t> bits(static_cast<size_t>(std::max<long long>(ctx.memory_slots, 1)));
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = (value >> i) & 1;
    counts_json[encode_hex(bits)] = count;
  }
  result.data.counts = counts_json;
  result.data.memory = Json(memory_list);
  if (!snapshots.empty()) result.data.snapshots = snapshots;
  return result;
}

Matrix run_unitary(const model::Experiment& exp, int n_qubits,
                   const std::map<std::string, ParsedGateDef>& defs) {
  int n = n_qubits >= 0 ? n_qubits : experiment_width(exp);
  long long dim = 1LL << n;
  Matrix acc = Matrix::Identity(dim, dim);
  for (const auto& instr : exp.instructions) {
    if (const auto* g = std::get_if<model::Gate>(&instr)) {
      if (g->conditional) {
        throw EngineError("conditional gates have no unitary representation");
      }
      Matrix m = gate_matrix(g->name, g->params.value_or(std::vector<double>{}), defs);
      std::vector<int> qubits(g->qubits.begin(), g->qubits.end());
      acc = embed_gate(m, qubits, n) * acc;
    } else if (std::get_if<model::Barrier>(&instr) ||
               std::get_if<model::Snapshot>(&instr)) {
      // No unitary content.
    } else {
      throw EngineError(std::string("instruction '") + model::instruction_name(instr) +
                        "' is not unitary");
    }
  }
  return acc;
}

}  // namespace qobjsim::qasm
