#include <doctest.h>

#include <cmath>

#include "qobjsim/model/parse.hpp"
#include "qobjsim/pulse/engine.hpp"
#include "qobjsim/pulse/kernels.hpp"

using namespace qobjsim;
using namespace qobjsim::pulse;

namespace {

constexpr double kDt = 0.83333;
// Calibrated so the amplitude-1.0 Gaussian (area 3.756 samples) turns the
// qubit by exactly pi.
const double kKappa = M_PI / (3.756 * kDt);

const char* kPulseLibJson = R"([
  {"name": "pulse1", "samples": [[0.002,0.0],[0.015,0.0],[0.065,0.0],[0.2,0.0],
    [0.4,0.0],[0.5,0.0],[0.4,0.0],[0.2,0.0],[0.065,-0.0],[0.015,0.0],[0.002,0.0]]},
  {"name": "pulse2", "samples": [[0.004,0.0],[0.029,0.0],[0.135,0.0],[0.41,0.0],
    [0.8,0.0],[1.0,0.0],[0.8,0.0],[0.41,0.0],[0.135,0.0],[0.029,0.0],[0.004,0.0]]},
  {"name": "square_pulse", "samples": [[0.1,0.0],[0.1,0.0],[0.1,0.0],[0.1,0.0],
    [0.1,0.0],[0.1,0.0]]},
  {"name": "drag_pulse", "samples": [[0.004,0.009],[0.029,0.05],[0.135,0.18],
    [0.41,0.365],[0.8,0.355],[1.0,0.0],[0.8,-0.355],[0.41,-0.365],[0.135,-0.18],
    [0.029,-0.05],[0.004,-0.009]]}
])";

model::PulseDefaults test_defaults() {
  model::PulseDefaults d;
  d.qubit_freq_est = {5.0};
  d.meas_freq_est = {6.5};
  d.buffer = 10;
  d.pulse_library = model::parse_pulse_library(Json::parse(kPulseLibJson));
  d.meas_kernel = model::KernelSpec{"boxcar", {}, Json::object()};
  d.discriminator = model::KernelSpec{"max_1Q_fidelity", {0.0, 0.05}, Json::object()};
  return d;
}

ham::EvaluatedHamiltonian one_qubit_hamiltonian() {
  auto terms = ham::parse_hstr(
      {"__SUM[i,0,N,_X{i}_||_D{i}_]", "__SUM[i,0,N,2*pi*_v{i}_*_O{i}_]"});
  return ham::bind_and_evaluate(terms, {{"v0", 5.0}}, ham::SubsystemLayout::qubits(1), 1);
}

struct Fixture {
  model::PulseDefaults defaults = test_defaults();
  PulseRunContext ctx;

  Fixture() {
    ctx.hamiltonian = one_qubit_hamiltonian();
    ctx.dt = kDt;
    ctx.dtm = kDt;
    ctx.drive_scale = kKappa;
    ctx.shots = 1;
    ctx.seed = 11;
    ctx.meas_level = 2;
    ctx.meas_return = "single";
    ctx.memory_slots = 1;
    ctx.memory_slot_size = 6;
    ctx.n_registers = 2;
    ctx.qubit_lo_freq = {5.0};
    ctx.meas_lo_freq = {6.5};
    ctx.defaults = &defaults;
  }
};

model::Experiment pulse_experiment(const std::string& instructions_json) {
  Json j = Json::parse(R"({"qobj_id":"t","type":"PULSE","schema_version":"1.0",
    "header":{},"config":{"shots":1,"memory_slots":1,"meas_level":2},
    "experiments":[{"instructions":)" + instructions_json + "}]}");
  return model::parse_qobj(j).experiments[0];
}

EffectiveLibrary lib_of(const model::PulseDefaults& d) {
  return EffectiveLibrary(nullptr, &d.pulse_library);
}

double p_excited(const Eigen::VectorXcd& state) { return std::norm(state(1)); }

// Test-side reference: integrate i psi' = H(t) psi with RK4 at dt/100 for a
// real resonant envelope on one qubit, H(t) = kappa * s(t) X / 2.
Eigen::Vector2cd rk4_reference(const std::vector<double>& samples, double dt, double kappa) {
  using V = Eigen::Vector2cd;
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  V psi;
  psi << 1, 0;
  const int sub = 100;
  double h = dt / sub;
  auto deriv = [&](const V& v, double amp) {
    return V(std::complex<double>(0, -0.5 * kappa * amp) * (x * v));
  };
  for (double amp : samples) {
    for (int s = 0; s < sub; ++s) {
      V k1 = deriv(psi, amp);
      V k2 = deriv(psi + 0.5 * h * k1, amp);
      V k3 = deriv(psi + 0.5 * h * k2, amp);
      V k4 = deriv(psi + h * k3, amp);
      psi += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  return psi;
}

}  // namespace

TEST_CASE("timelines: the documented mixed sequence") {
  auto d = test_defaults();
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse1","t0":0,"ch":"d0"},
    {"name":"fc","t0":10,"phase":0.1,"ch":"d0"},
    {"name":"drag_pulse","t0":11,"ch":"d0"},
    {"name":"square_pulse","t0":25,"ch":"m0"},
    {"name":"acquire","t0":25,"duration":10,"qubits":[0],"memory_slot":[0]}])");
  auto timelines = build_timelines(exp.instructions, lib_of(d));

  model::Channel d0{model::Channel::Kind::Drive, 0};
  model::Channel m0{model::Channel::Kind::Measure, 0};
  REQUIRE(timelines.count(d0) == 1);
  REQUIRE(timelines.count(m0) == 1);
  const auto& tl = timelines.at(d0);
  REQUIRE(tl.pulses.size() == 2);
  CHECK(tl.frame_changes.size() == 1);

  // Samples before the fc are untouched, after it they carry e^{-i 0.1}.
  Complex before = tl.output_at(5);
  CHECK(before == Complex(0.5, 0.0));
  Complex after = tl.output_at(11 + 5);
  Complex expected = Complex(1.0, 0.0) * std::exp(Complex(0, -0.1));
  CHECK(std::abs(after - expected) < 1e-12);
  // After the last drive pulse the channel reads zero.
  CHECK(tl.output_at(22) == Complex(0.0, 0.0));
}

TEST_CASE("timelines: zero-phase fc is a no-op") {
  auto d = test_defaults();
  auto with = build_timelines(
      pulse_experiment(R"([{"name":"fc","t0":0,"phase":0.0,"ch":"d0"},
                           {"name":"pulse1","t0":0,"ch":"d0"}])").instructions,
      lib_of(d));
  auto without = build_timelines(
      pulse_experiment(R"([{"name":"pulse1","t0":0,"ch":"d0"}])").instructions, lib_of(d));
  model::Channel d0{model::Channel::Kind::Drive, 0};
  for (long long t = 0; t < 11; ++t) {
    CHECK(with.at(d0).output_at(t) == without.at(d0).output_at(t));
  }
}

TEST_CASE("timelines: frame changes compose additively") {
  auto d = test_defaults();
  ShotRng rng(5, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    double p1 = (rng.next_double() - 0.5) * 4 * M_PI;
    double p2 = (rng.next_double() - 0.5) * 4 * M_PI;
    auto fc_at = [](long long t0, double phase) {
      Json j = Json::parse(R"({"name":"fc","t0":0,"phase":0,"ch":"d0"})");
      j["t0"] = t0;
      j["phase"] = phase;
      return j;
    };
    Json pulse = Json::parse(R"({"name":"pulse1","t0":2,"ch":"d0"})");
    auto two = build_timelines(
        pulse_experiment(Json::array({fc_at(0, p1), fc_at(1, p2), pulse}).dump())
            .instructions,
        lib_of(d));
    auto one = build_timelines(
        pulse_experiment(Json::array({fc_at(0, p1 + p2), pulse}).dump()).instructions,
        lib_of(d));
    model::Channel d0{model::Channel::Kind::Drive, 0};
    for (long long t = 2; t < 13; ++t) {
      CHECK(std::abs(two.at(d0).output_at(t) - one.at(d0).output_at(t)) < 1e-12);
    }
  }
}

TEST_CASE("timelines: schedule errors") {
  auto d = test_defaults();
  CHECK_THROWS_WITH_AS(
      build_timelines(pulse_experiment(R"([{"name":"pulse1","t0":0,"ch":"d0"},
                                           {"name":"pulse1","t0":5,"ch":"d0"}])")
                          .instructions,
                      lib_of(d)),
      doctest::Contains("OverlappingPulses"), ScheduleError);
  CHECK_THROWS_WITH_AS(
      build_timelines(pulse_experiment(R"([{"name":"nope","t0":0,"ch":"d0"}])").instructions,
                      lib_of(d)),
      doctest::Contains("UnknownPulseName"), ScheduleError);
  CHECK_THROWS_WITH_AS(
      build_timelines(pulse_experiment(R"([{"name":"pulse1","t0":20,"ch":"d0"},
                                           {"name":"fc","t0":3,"phase":0.1,"ch":"d1"}])")
                          .instructions,
                      lib_of(d)),
      doctest::Contains("NonMonotoneT0"), ScheduleError);
}

TEST_CASE("timelines: persistent value holds until the next pulse") {
  auto d = test_defaults();
  auto timelines = build_timelines(
      pulse_experiment(R"([{"name":"pv","t0":3,"ch":"d0","val":[0.25,-0.1]},
                           {"name":"pulse1","t0":8,"ch":"d0"}])")
          .instructions,
      lib_of(d));
  model::Channel d0{model::Channel::Kind::Drive, 0};
  const auto& tl = timelines.at(d0);
  CHECK(tl.output_at(2) == Complex(0.0, 0.0));
  CHECK(tl.output_at(3) == Complex(0.25, -0.1));
  CHECK(tl.output_at(7) == Complex(0.25, -0.1));
  CHECK(tl.output_at(8) == Complex(0.002, 0.0));  // pulse takes over
}

TEST_CASE("propagation: free evolution leaves the state alone in its frame") {
  Fixture f;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"square_pulse","t0":40,"ch":"m0"},
    {"name":"acquire","t0":40,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  PulseExecutor exec(exp, f.ctx);
  auto outcome = exec.run_shot(0);
  CHECK(std::abs(std::abs(outcome.final_state(0)) - 1.0) < 1e-9);
}

TEST_CASE("propagation: full-amplitude pulse is a pi rotation") {
  Fixture f;
  model::Experiment exp = pulse_experiment(R"([{"name":"pulse2","t0":0,"ch":"d0"}])");
  PulseExecutor exec(exp, f.ctx);
  auto outcome = exec.run_shot(0);
  CHECK(p_excited(outcome.final_state) > 0.999);
}

TEST_CASE("propagation: half amplitude matches the fine-step reference") {
  Fixture f;
  model::Experiment exp = pulse_experiment(R"([{"name":"pulse1","t0":0,"ch":"d0"}])");
  PulseExecutor exec(exp, f.ctx);
  auto outcome = exec.run_shot(0);

  std::vector<double> samples = {0.002, 0.015, 0.065, 0.2, 0.4, 0.5,
                                 0.4,   0.2,   0.065, 0.015, 0.002};
  auto ref = rk4_reference(samples, kDt, kKappa);
  CHECK(std::abs(p_excited(outcome.final_state) - std::norm(ref(1))) < 1e-9);

  // Same thing in closed form: the resonant Rabi angle is kappa * area.
  double area = 0.0;
  for (double s : samples) area += s * kDt;
  CHECK(p_excited(outcome.final_state) ==
        doctest::Approx(std::pow(std::sin(kKappa * area / 2), 2)).epsilon(1e-9));
}

TEST_CASE("propagation: rabi population is monotone in amplitude") {
  Fixture f;
  auto p1_of = [&](const char* instrs) {
    model::Experiment exp = pulse_experiment(instrs);
    PulseExecutor exec(exp, f.ctx);
    return p_excited(exec.run_shot(0).final_state);
  };
  double p0 = p1_of(R"([{"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  double p_half = p1_of(R"([{"name":"pulse1","t0":0,"ch":"d0"}])");
  double p_full = p1_of(R"([{"name":"pulse2","t0":0,"ch":"d0"}])");
  CHECK(p0 < p_half);
  CHECK(p_half < p_full);
}

TEST_CASE("propagation: norm drift stays below 1e-9 over 1e4 samples") {
  Fixture f;
  // One long pv drive plus a detuned LO keeps every sample non-trivial.
  f.ctx.qubit_lo_freq = {5.003};
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pv","t0":0,"ch":"d0","val":[0.05,0.02]},
    {"name":"square_pulse","t0":10000,"ch":"m0"},
    {"name":"acquire","t0":10000,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  PulseExecutor exec(exp, f.ctx);
  CHECK(exec.end_time() == 10006);
  auto outcome = exec.run_shot(0);
  CHECK(std::abs(outcome.final_state.norm() - 1.0) < 1e-9);
}

TEST_CASE("propagation: halving the substep barely moves the rabi result") {
  Fixture f;
  model::Experiment exp = pulse_experiment(R"([{"name":"pulse1","t0":0,"ch":"d0"}])");
  f.ctx.substeps = 1;
  auto a = PulseExecutor(exp, f.ctx).run_shot(0).final_state;
  f.ctx.substeps = 2;
  auto b = PulseExecutor(exp, f.ctx).run_shot(0).final_state;
  double fidelity = std::norm((a.adjoint() * b)(0));
  CHECK(std::abs(1.0 - fidelity) < 1e-6);
}

TEST_CASE("conditional pulses contribute zero samples when the bit is low") {
  Fixture f;
  f.ctx.shots = 40;
  f.ctx.seed = 3;
  // Half-amplitude pulse, measure into register 0, then a conditional pulse.
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse1","t0":0,"ch":"d0"},
    {"name":"square_pulse","t0":11,"ch":"m0"},
    {"name":"acquire","t0":11,"duration":6,"qubits":[0],"memory_slot":[0],
     "register_slot":[0]},
    {"name":"pulse2","t0":17,"ch":"d0","conditional":0}])");
  PulseExecutor exec(exp, f.ctx);
  model::Channel d0{model::Channel::Kind::Drive, 0};
  int fired = 0, skipped = 0;
  for (long long shot = 0; shot < f.ctx.shots; ++shot) {
    auto outcome = exec.run_shot(shot);
    bool bit = outcome.slots[0].bit != 0;
    const auto& wave = outcome.waveforms.at(d0);
    double tail = 0.0;
    for (long long t = 17; t < 28 && t < (long long)wave.size(); ++t) {
      tail += std::abs(wave[t]);
    }
    if (bit) {
      CHECK(tail > 1.0);
      ++fired;
    } else {
      CHECK(tail == 0.0);
      ++skipped;
    }
  }
  CHECK(fired > 0);
  CHECK(skipped > 0);
}

TEST_CASE("boxcar kernel") {
  CHECK(boxcar_kernel({{0.3, -0.2}, {0.3, -0.2}}) == Complex(0.3, -0.2));
  Complex got = boxcar_kernel({{0.1, 0.2}, {0.3, -0.1}, {0.5, 0.8}});
  CHECK(got.real() == doctest::Approx(0.3));
  CHECK(got.imag() == doctest::Approx(0.3));
  CHECK(boxcar_kernel({}) == Complex(0.0, 0.0));
  CHECK_THROWS(apply_kernel("fancy", {}, {{1, 0}}));
}

TEST_CASE("half-plane discriminator") {
  CHECK(discriminate_max_1q_fidelity({0.1, 0.0}, {0.0, 0.05}) == 0);
  CHECK(discriminate_max_1q_fidelity({0.0, 0.1}, {0.0, 0.05}) == 1);
  // Point exactly on the line ties low.
  CHECK(discriminate_max_1q_fidelity({0.2, 0.05}, {0.0, 0.05}) == 0);
  CHECK(discriminate_max_1q_fidelity({0.0, 0.1}, {}) == 1);
  CHECK_THROWS(apply_discriminator("fancy", {}, {0, 0}));
}

TEST_CASE("acquisition pipeline: amplitude-0 run reads all zeros") {
  Fixture f;
  f.ctx.shots = 5;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  CHECK(*result.data.counts == Json::parse(R"({"0x0":5})"));
  CHECK(result.data.memory->size() == 5);
}

TEST_CASE("acquisition pipeline: pi pulse reads all ones") {
  Fixture f;
  f.ctx.shots = 5;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse2","t0":0,"ch":"d0"},
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  CHECK(*result.data.counts == Json::parse(R"({"0x1":5})"));
}

TEST_CASE("level 0 average output reproduces the stimulus envelope") {
  Fixture f;
  f.ctx.shots = 5;
  f.ctx.meas_level = 0;
  f.ctx.meas_return = "avg";
  model::Experiment exp = pulse_experiment(R"([
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  const Json& memory = *result.data.memory;
  REQUIRE(memory.size() == 1);      // r slots
  REQUIRE(memory[0].size() == 6);   // l samples
  for (const auto& pair : memory[0]) {
    CHECK(pair[0].get<double>() == doctest::Approx(0.1));
    CHECK(pair[1].get<double>() == doctest::Approx(0.0));
  }
}

TEST_CASE("level 1 noisy IQ clusters by state phase") {
  Fixture f;
  f.ctx.shots = 20;
  f.ctx.meas_level = 1;
  f.ctx.meas_return = "single";
  f.ctx.iq_noise_sigma = 0.01;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse2","t0":0,"ch":"d0"},
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  const Json& memory = *result.data.memory;
  REQUIRE(memory.size() == 20);  // s
  for (const auto& row : memory) {
    REQUIRE(row.size() == 1);  // r
    // |1> signal sits near (0, 0.1).
    CHECK(std::abs(row[0][0].get<double>()) < 0.05);
    CHECK(row[0][1].get<double>() > 0.05);
  }
}

TEST_CASE("two-qubit acquire: kernels per qubit, one joint discriminator") {
  auto terms = ham::parse_hstr(
      {"__SUM[i,0,N,_X{i}_||_D{i}_]", "__SUM[i,0,N,2*pi*_v{i}_*_O{i}_]"});
  Fixture f;
  f.ctx.hamiltonian = ham::bind_and_evaluate(terms, {{"v0", 5.0}, {"v1", 5.1}},
                                             ham::SubsystemLayout::qubits(2), 2);
  f.ctx.qubit_lo_freq = {5.0, 5.1};
  f.ctx.meas_lo_freq = {6.5, 6.6};
  f.ctx.memory_slots = 2;
  f.ctx.shots = 3;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse2","t0":0,"ch":"d1"},
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"square_pulse","t0":12,"ch":"m1"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0,1],"memory_slot":[0,1],
     "kernels":[{"name":"boxcar","params":[]},{"name":"boxcar","params":[]}],
     "discriminators":[{"name":"max_2Q_fidelity","params":[0.0,0.05]}]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  // Qubit 1 was flipped: slot 1 set, slot 0 clear -> "0x2".
  CHECK(*result.data.counts == Json::parse(R"({"0x2":3})"));
}

TEST_CASE("assemble shapes hold for every level/return/shots/slots combination") {
  for (int level : {0, 1, 2}) {
    for (const char* ret : {"single", "avg"}) {
      if (level == 2 && std::string(ret) == "avg") continue;
      for (long long shots : {1, 2, 8}) {
        for (long long slots : {1, 2, 3}) {
          const long long slot_size = 4;
          std::vector<std::vector<SlotRecord>> records(shots);
          for (auto& per_shot : records) {
            per_shot.resize(slots);
            for (auto& rec : per_shot) {
              rec.filled = true;
              rec.level0.assign(slot_size, Complex(0.25, -0.5));
              rec.level1 = Complex(0.25, -0.5);
              rec.bit = 1;
            }
          }
          auto data = assemble_pulse_result(records, level, ret, slots, slot_size);
          if (level == 2) {
            REQUIRE(data.counts.has_value());
            CHECK(data.memory->size() == static_cast<size_t>(shots));
            long long total = 0;
            for (const auto& [k, v] : data.counts->items()) total += v.get<long long>();
            CHECK(total == shots);
            continue;
          }
          const Json& memory = *data.memory;
          bool averaged = std::string(ret) == "avg";
          if (level == 1) {
            if (averaged) {
              REQUIRE(memory.size() == static_cast<size_t>(slots));
              CHECK(memory[0].size() == 2);  // an [I, Q] pair
            } else {
              REQUIRE(memory.size() == static_cast<size_t>(shots));
              REQUIRE(memory[0].size() == static_cast<size_t>(slots));
              CHECK(memory[0][0].size() == 2);
            }
          } else {
            if (averaged) {
              REQUIRE(memory.size() == static_cast<size_t>(slots));
              REQUIRE(memory[0].size() == static_cast<size_t>(slot_size));
              CHECK(memory[0][0].size() == 2);
            } else {
              REQUIRE(memory.size() == static_cast<size_t>(shots));
              REQUIRE(memory[0].size() == static_cast<size_t>(slots));
              REQUIRE(memory[0][0].size() == static_cast<size_t>(slot_size));
              CHECK(memory[0][0][0].size() == 2);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("assemble zero-fills untouched slots") {
  std::vector<std::vector<SlotRecord>> records(2);
  records[0].resize(1);
  records[1].resize(1);
  auto data = assemble_pulse_result(records, 1, "single", 1, 1);
  CHECK(*data.memory == Json::parse("[[[0.0,0.0]],[[0.0,0.0]]]"));
}

TEST_CASE("pulse snapshots record the mid-experiment state") {
  Fixture f;
  f.ctx.shots = 1;
  model::Experiment exp = pulse_experiment(R"([
    {"name":"pulse2","t0":0,"ch":"d0"},
    {"name":"snapshot","label":"after_pi","type":"state","t0":11},
    {"name":"square_pulse","t0":12,"ch":"m0"},
    {"name":"acquire","t0":12,"duration":6,"qubits":[0],"memory_slot":[0]}])");
  auto result = run_pulse_experiment(exp, f.ctx);
  REQUIRE(result.data.snapshots.has_value());
  const Json& snap = (*result.data.snapshots)["state"]["after_pi"];
  double p1 = snap[1][0].get<double>() * snap[1][0].get<double>() +
              snap[1][1].get<double>() * snap[1][1].get<double>();
  CHECK(p1 > 0.999);
}

TEST_CASE("nonlinear drive channels are rejected when driven") {
  Fixture f;
  auto terms = ham::parse_hstr({"2*pi*_v0_*sqrt(abs(cos(pi*(_dc0_+_D0_))))*_O{0}_"});
  f.ctx.hamiltonian = ham::bind_and_evaluate(terms, {{"v0", 5.0}, {"dc0", 0.1}},
                                             ham::SubsystemLayout::qubits(1), 1);
  model::Experiment exp = pulse_experiment(R"([{"name":"pulse1","t0":0,"ch":"d0"}])");
  CHECK_THROWS_WITH_AS(PulseExecutor(exp, f.ctx), doctest::Contains("NonlinearDrive"),
                       PulseError);
}
