#include <doctest.h>

#include <cmath>

#include "qobjsim/common/hex.hpp"
#include "qobjsim/model/parse.hpp"
#include "qobjsim/model/serialize.hpp"
#include "qobjsim/qasm/engine.hpp"

using namespace qobjsim;
using namespace qobjsim::qasm;
using Complex = std::complex<double>;

namespace {

// Oracle: the base-gate matrix written out longhand, independent of
// u_matrix's implementation.
Matrix u_oracle(double theta, double phi, double lambda) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(theta / 2);
  m(0, 1) = -(std::cos(lambda) + Complex(0, 1) * std::sin(lambda)) * std::sin(theta / 2);
  m(1, 0) = (std::cos(phi) + Complex(0, 1) * std::sin(phi)) * std::sin(theta / 2);
  m(1, 1) = (std::cos(phi + lambda) + Complex(0, 1) * std::sin(phi + lambda)) *
            std::cos(theta / 2);
  return m;
}

// Largest-element phase alignment, then max abs difference.
double diff_up_to_phase(const Matrix& a, const Matrix& b) {
  int ri = 0, ci = 0;
  double best = 0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > best) {
        best = std::abs(a(i, j));
        ri = i;
        ci = j;
      }
    }
  }
  if (best == 0.0) return b.cwiseAbs().maxCoeff();
  Complex phase = b(ri, ci) / a(ri, ci);
  if (std::abs(phase) == 0.0) return 1.0;
  phase /= std::abs(phase);
  return (a * phase - b).cwiseAbs().maxCoeff();
}

model::Experiment make_experiment(const std::string& instructions_json) {
  Json j = Json::parse(R"({"qobj_id":"t","type":"QASM","schema_version":"1.0",
    "header":{},"config":{"shots":1,"memory_slots":1},"experiments":[
    {"instructions":)" + instructions_json + "}]}");
  return model::parse_qobj(j).experiments[0];
}

}  // namespace

TEST_CASE("qasm_def: swap body is three CX statements") {
  ParsedGateDef def = parse_qasm_def("gate swap a,b { CX a,b; CX b,a; CX a,b; }");
  CHECK(def.name == "swap");
  CHECK(def.args == std::vector<std::string>{"a", "b"});
  REQUIRE(def.statements.size() == 3);
  CHECK(def.statements[0].kind == DefStatement::Kind::CX);
  CHECK(def.statements[1].arg0 == 1);
  CHECK(def.statements[1].arg1 == 0);
}

TEST_CASE("qasm_def: u3 body and empty body") {
  ParsedGateDef u3 =
      parse_qasm_def("gate u3(theta,phi,lambda) q { U(theta,phi,lambda) q; }");
  CHECK(u3.params.size() == 3);
  REQUIRE(u3.statements.size() == 1);
  CHECK(u3.statements[0].kind == DefStatement::Kind::U);

  ParsedGateDef id = parse_qasm_def("gate id q { }");
  CHECK(id.statements.empty());
  CHECK(id.args.size() == 1);
}

TEST_CASE("qasm_def: parameter arithmetic and errors") {
  ParsedGateDef g = parse_qasm_def("gate rz2(t) q { U(0, 0, t/2 + pi) q; }");
  CHECK(g.statements[0].angles[2].eval({1.0}) == doctest::Approx(0.5 + M_PI));

  CHECK_THROWS_AS(parse_qasm_def("gate bad q { H q; }"), DefError);
  CHECK_THROWS_AS(parse_qasm_def("circuit bad q { }"), DefError);
  try {
    parse_qasm_def("gate bad(t) q { U(t, s, 0) q; }");
    FAIL("expected DefError");
  } catch (const DefError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("gate matrices match the explicit-form oracle") {
  std::map<std::string, ParsedGateDef> defs;
  for (double theta : {0.0, 0.7, M_PI / 2, M_PI}) {
    for (double phi : {0.0, 0.3, M_PI}) {
      for (double lambda : {0.0, 1.1, M_PI}) {
        Matrix got = gate_matrix("u3", {theta, phi, lambda}, defs);
        CHECK((got - u_oracle(theta, phi, lambda)).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("u3(pi,0,pi) is X up to global phase") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  Matrix got = gate_matrix("u3", {M_PI, 0, M_PI}, {});
  CHECK(diff_up_to_phase(got, x) < 1e-10);
}

TEST_CASE("u1(0) is the identity") {
  Matrix got = gate_matrix("u1", {0.0}, {});
  CHECK((got - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("u2(0,pi) is Hadamard up to global phase") {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(diff_up_to_phase(gate_matrix("u2", {0.0, M_PI}, {}), h) < 1e-10);
  // u2 is U(pi/2, phi, lambda) by definition.
  CHECK((gate_matrix("u2", {0.3, 1.2}, {}) - u_oracle(M_PI / 2, 0.3, 1.2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("swap expansion equals the brute-force product") {
  std::map<std::string, ParsedGateDef> defs;
  defs["swap"] = parse_qasm_def("gate swap a,b { CX a,b; CX b,a; CX a,b; }");
  Matrix got = gate_matrix("swap", {}, defs);

  // Oracle: multiply the three embedded CX matrices by hand.
  Matrix cx01 = cx_matrix();
  Matrix cx10 = embed_gate(cx_matrix(), {1, 0}, 2);
  Matrix brute = cx01 * cx10 * cx01;
  CHECK((got - brute).cwiseAbs().maxCoeff() < 1e-14);

  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  CHECK(diff_up_to_phase(got, swap) < 1e-10);
}

TEST_CASE("gate matrices are unitary") {
  std::map<std::string, ParsedGateDef> defs;
  defs["swap"] = parse_qasm_def("gate swap a,b { CX a,b; CX b,a; CX a,b; }");
  for (const auto& [name, params] :
       std::vector<std::pair<std::string, std::vector<double>>>{
           {"u1", {0.4}}, {"u2", {0.1, 2.2}}, {"u3", {1.0, 2.0, 3.0}}, {"cx", {}},
           {"swap", {}}}) {
    Matrix m = gate_matrix(name, params, defs);
    Matrix eye = Matrix::Identity(m.rows(), m.cols());
    CHECK((m.adjoint() * m - eye).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("statevector norm is preserved across random circuits") {
  ShotRng rng(123, 0, 0);
  Statevector sv(3);
  std::map<std::string, ParsedGateDef> defs;
  for (int step = 0; step < 100; ++step) {
    if (rng.next_double() < 0.7) {
      Matrix m = gate_matrix(
          "u3", {rng.next_double() * M_PI, rng.next_double() * 2 * M_PI,
                 rng.next_double() * 2 * M_PI},
          defs);
      sv.apply_1q(m, static_cast<int>(rng.next_u64() % 3));
    } else {
      int a = static_cast<int>(rng.next_u64() % 3);
      int b = (a + 1 + static_cast<int>(rng.next_u64() % 2)) % 3;
      sv.apply_2q(cx_matrix(), a, b);
    }
    CHECK(std::abs(sv.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("bell experiment produces correlated counts") {
  model::Experiment exp = make_experiment(R"([
    {"name":"u2","qubits":[0],"params":[0.0,3.14159]},
    {"name":"cx","qubits":[0,1]},
    {"name":"measure","qubits":[0,1],"memory":[0,1]}])");
  RunContext ctx;
  ctx.n_qubits = 2;
  ctx.shots = 1000;
  ctx.seed = 7;
  ctx.memory_slots = 2;
  auto result = run_experiment(exp, ctx);
  const Json& counts = *result.data.counts;
  long long c0 = counts.value("0x0", 0);
  long long c3 = counts.value("0x3", 0);
  CHECK(c0 + c3 == 1000);  // no mass off the Bell support
  CHECK(std::abs(c0 - 500.0) < 79);  // 5 sigma
  CHECK(result.data.memory->size() == 1000);
}

TEST_CASE("empty circuit yields a single zero count") {
  model::Experiment exp = make_experiment("[]");
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 1;
  ctx.memory_slots = 1;
  auto result = run_experiment(exp, ctx);
  CHECK(*result.data.counts == Json::parse(R"({"0x0":1})"));
}

TEST_CASE("results are deterministic for a fixed seed") {
  model::Experiment exp = make_experiment(R"([
    {"name":"u2","qubits":[0],"params":[0.0,3.14159]},
    {"name":"cx","qubits":[0,1]},
    {"name":"measure","qubits":[0,1],"memory":[0,1]}])");
  RunContext ctx;
  ctx.n_qubits = 2;
  ctx.shots = 200;
  ctx.seed = 42;
  ctx.memory_slots = 2;
  auto a = run_experiment(exp, ctx);
  auto b = run_experiment(exp, ctx);
  CHECK(model::serialize(model::to_json(a)) == model::serialize(model::to_json(b)));
  ctx.seed = 43;
  auto c = run_experiment(exp, ctx);
  CHECK(model::serialize(model::to_json(a)) != model::serialize(model::to_json(c)));
}

TEST_CASE("conditional truth table over three registers") {
  // For every register value and conditional index, the gate fires iff the
  // selected bit is 1. Registers are staged with bfunc writes.
  for (int regval = 0; regval < 8; ++regval) {
    for (int cond = 0; cond < 3; ++cond) {
      Json instrs = Json::array();
      for (int r = 0; r < 3; ++r) {
        Json set = Json::object();
        set["name"] = "bfunc";
        set["mask"] = "0x0";
        // (regs & 0) == 0 is always true; invert the relation to write 0.
        set["relation"] = (regval >> r) & 1 ? "==" : "!=";
        set["val"] = "0x0";
        set["register"] = r;
        instrs.push_back(set);
      }
      Json gate = Json::object();
      gate["name"] = "u3";
      gate["qubits"] = Json::array({0});
      gate["params"] = Json::array({M_PI, 0.0, M_PI});
      gate["conditional"] = cond;
      instrs.push_back(gate);
      instrs.push_back(
          Json::parse(R"({"name":"measure","qubits":[0],"memory":[0]})"));

      model::Experiment exp = make_experiment(instrs.dump());
      RunContext ctx;
      ctx.n_qubits = 1;
      ctx.shots = 1;
      ctx.memory_slots = 1;
      ctx.n_registers = 3;
      auto result = run_experiment(exp, ctx);
      bool fired = result.data.memory->at(0) == "0x1";
      CHECK(fired == (((regval >> cond) & 1) == 1));
    }
  }
}

TEST_CASE("bfunc matches integer arithmetic for widths up to 8") {
  for (int width = 1; width <= 8; ++width) {
    for (uint64_t regval = 0; regval < (1ULL << width); ++regval) {
      // One mask per value plus the all-ones mask keeps the sweep exhaustive
      // in the register value while covering mask variety.
      for (uint64_t mask : std::vector<uint64_t>{regval, (1ULL << width) - 1, 0x5}) {
        uint64_t val = regval & mask;
        for (const char* relation : {"==", "!="}) {
          Json instrs = Json::array();
          for (int r = 0; r < width; ++r) {
            Json set = Json::object();
            set["name"] = "bfunc";
            set["mask"] = "0x0";
            set["relation"] = (regval >> r) & 1 ? "==" : "!=";
            set["val"] = "0x0";
            set["register"] = r;
            instrs.push_back(set);
          }
          char buf[32];
          std::snprintf(buf, sizeof(buf), "0x%llX", (unsigned long long)mask);
          Json test = Json::object();
          test["name"] = "bfunc";
          test["mask"] = buf;
          test["relation"] = relation;
          std::snprintf(buf, sizeof(buf), "0x%llX", (unsigned long long)val);
          test["val"] = buf;
          test["register"] = width;  // scratch register
          test["memory"] = 0;
          instrs.push_back(test);

          model::Experiment exp = make_experiment(instrs.dump());
          RunContext ctx;
          ctx.n_qubits = 1;
          ctx.shots = 1;
          ctx.memory_slots = 1;
          ctx.n_registers = width + 1;
          auto result = run_experiment(exp, ctx);
          bool got = result.data.memory->at(0) == "0x1";
          bool expected = (regval & mask) == val;
          if (std::string(relation) == "!=") expected = !expected;
          CHECK(got == expected);
        }
      }
    }
  }
}

TEST_CASE("copy duplicates a register bit") {
  Json instrs = Json::parse(R"([
    {"name":"bfunc","mask":"0x0","relation":"==","val":"0x0","register":0},
    {"name":"copy","register_orig":0,"register_copy":[1,2]},
    {"name":"u3","qubits":[0],"params":[3.141592653589793,0,3.141592653589793],
     "conditional":2},
    {"name":"measure","qubits":[0],"memory":[0]}])");
  model::Experiment exp = make_experiment(instrs.dump());
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 1;
  ctx.memory_slots = 1;
  ctx.n_registers = 3;
  auto result = run_experiment(exp, ctx);
  CHECK(result.data.memory->at(0) == "0x1");
}

TEST_CASE("reset forces the ground state") {
  Json instrs = Json::parse(R"([
    {"name":"u3","qubits":[0],"params":[3.141592653589793,0,3.141592653589793]},
    {"name":"reset","qubits":[0]},
    {"name":"measure","qubits":[0],"memory":[0]}])");
  model::Experiment exp = make_experiment(instrs.dump());
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 50;
  ctx.memory_slots = 1;
  auto result = run_experiment(exp, ctx);
  CHECK(*result.data.counts == Json::parse(R"({"0x0":50})"));
}

TEST_CASE("measure overwrites earlier memory writes") {
  Json instrs = Json::parse(R"([
    {"name":"u3","qubits":[0],"params":[3.141592653589793,0,3.141592653589793]},
    {"name":"measure","qubits":[0],"memory":[0]},
    {"name":"u3","qubits":[0],"params":[3.141592653589793,0,3.141592653589793]},
    {"name":"measure","qubits":[0],"memory":[0]}])");
  model::Experiment exp = make_experiment(instrs.dump());
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 10;
  ctx.memory_slots = 1;
  auto result = run_experiment(exp, ctx);
  CHECK(*result.data.counts == Json::parse(R"({"0x0":10})"));
}

TEST_CASE("bit flip noise: p=0 identical, p=1 deterministic flip") {
  model::Experiment exp = make_experiment(R"([
    {"name":"u1","qubits":[0],"params":[0.0]},
    {"name":"measure","qubits":[0],"memory":[0]}])");
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 20;
  ctx.memory_slots = 1;

  auto base = run_experiment(exp, ctx);
  ctx.bit_flip_probability = 0.0;
  auto zero = run_experiment(exp, ctx);
  CHECK(model::serialize(model::to_json(base)) == model::serialize(model::to_json(zero)));

  ctx.bit_flip_probability = 1.0;
  auto flipped = run_experiment(exp, ctx);
  CHECK(*flipped.data.counts == Json::parse(R"({"0x1":20})"));
}

TEST_CASE("snapshots record the state; extra shots warn") {
  model::Experiment exp = make_experiment(R"([
    {"name":"u2","qubits":[0],"params":[0.0,3.141592653589793]},
    {"name":"snapshot","label":"mid","type":"state"}])");
  RunContext ctx;
  ctx.n_qubits = 1;
  ctx.shots = 2;
  ctx.memory_slots = 1;
  std::vector<std::string> warnings;
  auto result = run_experiment(exp, ctx, &warnings);
  REQUIRE(result.data.snapshots.has_value());
  const Json& snap = (*result.data.snapshots)["state"]["mid"];
  REQUIRE(snap.size() == 2);
  CHECK(snap[0][0].get<double>() == doctest::Approx(1 / std::sqrt(2.0)));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("first shot") != std::string::npos);
}

TEST_CASE("unitary path: single cx embeds by index permutation") {
  model::Experiment exp = make_experiment(R"([{"name":"cx","qubits":[0,1]}])");
  Matrix u = run_unitary(exp, 2, {});
  // Oracle: permutation matrix built from the index map directly.
  Matrix oracle = Matrix::Zero(4, 4);
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      int in = t * 2 + c;
      int out = (c ? 1 - t : t) * 2 + c;
      oracle(out, in) = 1;
    }
  }
  CHECK((u - oracle).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("unitary path: empty circuit and hadamard") {
  CHECK((run_unitary(make_experiment("[]"), 1, {}) - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix u = run_unitary(
      make_experiment(R"([{"name":"u2","qubits":[0],"params":[0.0,3.141592653589793]}])"),
      1, {});
  CHECK(diff_up_to_phase(u, h) < 1e-10);
}

TEST_CASE("unitary rejects non-unitary instructions") {
  CHECK_THROWS_AS(
      run_unitary(make_experiment(R"([{"name":"measure","qubits":[0],"memory":[0]}])"), 1,
                  {}),
      EngineError);
  CHECK_THROWS_AS(
      run_unitary(make_experiment(R"([{"name":"reset","qubits":[0]}])"), 1, {}),
      EngineError);
}

TEST_CASE("unitary path equals the statevector path on random circuits") {
  ShotRng rng(2024, 0, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Json instrs = Json::array();
    int n = 3;
    for (int step = 0; step < 12; ++step) {
      if (rng.next_double() < 0.6) {
        Json g = Json::object();
        g["name"] = "u3";
        g["qubits"] = Json::array({static_cast<int>(rng.next_u64() % n)});
        g["params"] = Json::array({rng.next_double() * M_PI, rng.next_double() * 2 * M_PI,
                                   rng.next_double() * 2 * M_PI});
        instrs.push_back(g);
      } else {
        int a = static_cast<int>(rng.next_u64() % n);
        int b = (a + 1 + static_cast<int>(rng.next_u64() % (n - 1))) % n;
        Json g = Json::object();
        g["name"] = "cx";
        g["qubits"] = Json::array({a, b});
        instrs.push_back(g);
      }
    }
    Matrix u = run_unitary(make_experiment(instrs.dump()), n, {});

    instrs.push_back(Json::parse(R"({"name":"snapshot","label":"end","type":"state"})"));
    model::Experiment exp = make_experiment(instrs.dump());
    RunContext ctx;
    ctx.n_qubits = n;
    ctx.shots = 1;
    ctx.memory_slots = 1;
    auto result = run_experiment(exp, ctx);
    const Json& snap = (*result.data.snapshots)["state"]["end"];
    for (int i = 0; i < 8; ++i) {
      Complex amp(snap[i][0].get<double>(), snap[i][1].get<double>());
      CHECK(std::abs(amp - u(i, 0)) < 1e-9);
    }
  }
}

TEST_CASE("counts total equals shots when all slots are written") {
  model::Experiment exp = make_experiment(R"([
    {"name":"u2","qubits":[0],"params":[0.0,3.14159]},
    {"name":"measure","qubits":[0,1],"memory":[0,1]}])");
  RunContext ctx;
  ctx.n_qubits = 2;
  ctx.shots = 333;
  ctx.memory_slots = 2;
  auto result = run_experiment(exp, ctx);
  long long total = 0;
  for (const auto& [k, v] : result.data.counts->items()) total += v.get<long long>();
  CHECK(total == 333);
}
