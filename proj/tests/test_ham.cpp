#include <doctest.h>

#include <cmath>

#include "qobjsim/ham/evaluate.hpp"

using namespace qobjsim;
using namespace qobjsim::ham;
using Complex = std::complex<double>;

namespace {

// Test-side Kronecker product, written with plain loops so it shares no
// code with the evaluator's embedding. kron(A, B): B is the low digit.
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix occupation() {
  Matrix m(2, 2);
  m << 0, 0, 0, 1;
  return m;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix ladder_lower(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(double(n));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("parse: sum macro with channel binding") {
  ExprPtr e = parse_hstr_term("__SUM[i,0,1,_X{i}_||_D{i}_]");
  const auto* sum = std::get_if<Expr::SumMacro>(&e->node);
  REQUIRE(sum != nullptr);
  CHECK(sum->var == "i");
  CHECK(std::get<int>(sum->lo) == 0);
  CHECK(std::get<int>(sum->hi) == 1);
  const auto* prod = std::get_if<Expr::Product>(&sum->body->node);
  REQUIRE(prod != nullptr);
  REQUIRE(prod->factors.size() == 2);
  const auto* op = std::get_if<Expr::Operator>(&prod->factors[0]->node);
  REQUIRE(op != nullptr);
  CHECK(op->kind == OperatorKind::X);
  CHECK(std::get<std::string>(*op->subsystem) == "i");
  const auto* ch = std::get_if<Expr::ChannelRef>(&prod->factors[1]->node);
  REQUIRE(ch != nullptr);
  CHECK(ch->kind == 'D');
}

TEST_CASE("parse: plain product term") {
  ExprPtr e = parse_hstr_term("2*pi*_v0_*_O{0}_");
  const auto* prod = std::get_if<Expr::Product>(&e->node);
  REQUIRE(prod != nullptr);
  REQUIRE(prod->factors.size() == 4);
  CHECK(std::get<Expr::Const>(prod->factors[0]->node).value == 2.0);
  CHECK(std::get<Expr::Const>(prod->factors[1]->node).value == doctest::Approx(M_PI));
  CHECK(std::get<Expr::Var>(prod->factors[2]->node).base == "v0");
  CHECK(std::get<Expr::Operator>(prod->factors[3]->node).kind == OperatorKind::O);
}

TEST_CASE("parse: errors carry a column and expected token") {
  try {
    parse_hstr_term("2*pi*)");
    FAIL("expected DslError");
  } catch (const DslError& e) {
    CHECK(e.column() == 5);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_hstr_term("SUM[i,0,1"), DslError);
  CHECK_THROWS_AS(parse_hstr_term("X{i} | D{i}"), DslError);
  CHECK_THROWS_AS(parse_hstr({"ok", "2*("}), DslError);
}

TEST_CASE("parse: inline digit indices and juxtaposition") {
  // QuaC-style spellings.
  ExprPtr e = parse_hstr_term("jq0q1*Sp0*Sm1");
  const auto* prod = std::get_if<Expr::Product>(&e->node);
  REQUIRE(prod != nullptr);
  CHECK(std::get<Expr::Var>(prod->factors[0]->node).base == "jq0q1");
  const auto* sp = std::get_if<Expr::Operator>(&prod->factors[1]->node);
  REQUIRE(sp != nullptr);
  CHECK(sp->kind == OperatorKind::Sp);
  CHECK(std::get<int>(*sp->subsystem) == 0);

  // Juxtaposed group from the coupled-bus fixture.
  ExprPtr j = parse_hstr_term("_g{i}_*_X{i}_(_a_+_A_)");
  CHECK(std::get_if<Expr::Product>(&j->node) != nullptr);
}

TEST_CASE("evaluate: unbound SUM limit without qubit context") {
  auto terms = parse_hstr({"SUM[i,0,N,_X{i}_||_D{i}_]"});
  try {
    bind_and_evaluate(terms, {}, SubsystemLayout::qubits(2), -1);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.kind() == "UnboundVariable");
    CHECK(std::string(e.what()).find("unbound bound N") != std::string::npos);
  }
}

TEST_CASE("evaluate: two independent qubits against the kron oracle") {
  auto terms = parse_hstr(
      {"__SUM[i,0,N,_X{i}_||_D{i}_]", "__SUM[i,0,N,2*pi*_v{i}_*_O{i}_]"});
  auto h = bind_and_evaluate(terms, {{"v0", 5.0}, {"v1", 5.25}},
                             SubsystemLayout::qubits(2), 2);

  // Subsystem 0 is the least significant digit, so it sits on the right
  // side of the Kronecker product.
  Matrix expected_static = 2 * M_PI * 5.0 * kron(identity(2), occupation()) +
                           2 * M_PI * 5.25 * kron(occupation(), identity(2));
  CHECK(max_abs_diff(h.static_part, expected_static) < 1e-12);
  CHECK(max_abs_diff(h.static_part, h.static_part.adjoint()) < 1e-12);

  model::Channel d0{model::Channel::Kind::Drive, 0};
  model::Channel d1{model::Channel::Kind::Drive, 1};
  REQUIRE(h.drives.count(d0) == 1);
  REQUIRE(h.drives.count(d1) == 1);
  CHECK(max_abs_diff(h.drives.at(d0).matrix, kron(identity(2), pauli_x())) < 1e-12);
  CHECK(max_abs_diff(h.drives.at(d1).matrix, kron(pauli_x(), identity(2))) < 1e-12);

  CHECK(h.subsystem_frame_frequency(0) == doctest::Approx(2 * M_PI * 5.0));
  CHECK(h.subsystem_frame_frequency(1) == doctest::Approx(2 * M_PI * 5.25));
}

TEST_CASE("evaluate: empty term list") {
  auto h = bind_and_evaluate({}, {}, SubsystemLayout::qubits(1), 1);
  CHECK(h.static_part.cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.drives.empty());
}

TEST_CASE("evaluate: coupled-bus system against a dense oracle") {
  // Two fixed-frequency qubits coupled to one bus oscillator truncated to
  // three levels; subsystem 2 is the bus.
  SubsystemLayout layout = SubsystemLayout::qubits(2);
  layout.subsystems.push_back({Subsystem::Kind::Oscillator, 3});

  auto terms = parse_hstr({"__SUM[i,0,1,_X{i}_*_D{i}_+_X{i}_*_U{i}_]",
                           "__SUM[i,0,1,2*pi*_v{i}_*_O{i}_]",
                           "_+2*pi*_wb_*_O{2}_",
                           "__SUM[i,0,1,_g{i}_*_X{i}_(_a_+_A_)]"});
  std::map<std::string, double> vars = {
      {"v0", 5.0}, {"v1", 5.1}, {"g0", 0.1}, {"g1", 0.1}, {"wb", 6.0}};
  auto h = bind_and_evaluate(terms, vars, layout, 2);

  REQUIRE(h.static_part.rows() == 12);

  Matrix a3 = ladder_lower(3);
  Matrix n3 = a3.adjoint() * a3;
  Matrix x_plus = a3 + a3.adjoint();
  Matrix i2 = identity(2), i3 = identity(3);

  // Oracle built the other way around: bus is the high digit, qubit 0 low.
  Matrix expected = 2 * M_PI * 5.0 * kron(i3, kron(i2, occupation())) +
                    2 * M_PI * 5.1 * kron(i3, kron(occupation(), i2)) +
                    2 * M_PI * 6.0 * kron(n3, kron(i2, i2)) +
                    0.1 * kron(x_plus, kron(i2, pauli_x())) +
                    0.1 * kron(x_plus, kron(pauli_x(), i2));
  CHECK(max_abs_diff(h.static_part, expected) < 1e-12);
  CHECK(max_abs_diff(h.static_part, h.static_part.adjoint()) < 1e-12);

  // Drive and control couplings act on the written qubit.
  model::Channel u1{model::Channel::Kind::Control, 1};
  REQUIRE(h.drives.count(u1) == 1);
  CHECK(max_abs_diff(h.drives.at(u1).matrix, kron(i3, kron(pauli_x(), i2))) < 1e-12);
  CHECK(h.drives.at(u1).subsystems == std::set<int>{1});
}

TEST_CASE("evaluate: the verbatim bus term with a stray index fails cleanly") {
  auto terms = parse_hstr({"_+2*pi*_wb_*_O{i}_"});
  SubsystemLayout layout = SubsystemLayout::qubits(2);
  layout.subsystems.push_back({Subsystem::Kind::Oscillator, 3});
  try {
    bind_and_evaluate(terms, {{"wb", 6.0}}, layout, 2);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.kind() == "UnboundIndex");
  }
}

TEST_CASE("evaluate: SUM equals manual unrolling") {
  std::map<std::string, double> vars = {{"v0", 1.25}, {"v1", -0.5}};
  auto macro = parse_hstr({"SUM[i,0,1,2*pi*_v{i}_*_O{i}_]"});
  auto manual = parse_hstr({"2*pi*_v0_*_O{0}_+2*pi*_v1_*_O{1}_"});
  auto layout = SubsystemLayout::qubits(2);
  auto hm = bind_and_evaluate(macro, vars, layout, 2);
  auto hu = bind_and_evaluate(manual, vars, layout, 2);
  CHECK(max_abs_diff(hm.static_part, hu.static_part) < 1e-14);
}

TEST_CASE("operator algebra identities on two-level subsystems") {
  Matrix x = operator_matrix(OperatorKind::X, 2);
  Matrix sp = operator_matrix(OperatorKind::Sp, 2);
  Matrix sm = operator_matrix(OperatorKind::Sm, 2);
  Matrix o = operator_matrix(OperatorKind::O, 2);
  Matrix z = operator_matrix(OperatorKind::Z, 2);
  Matrix a = operator_matrix(OperatorKind::Lower, 2);
  Matrix ad = operator_matrix(OperatorKind::Raise, 2);

  CHECK(max_abs_diff(x, sp + sm) == 0.0);
  CHECK(max_abs_diff(o, 0.5 * (identity(2) - z)) == 0.0);
  CHECK(max_abs_diff(a, sm) == 0.0);
  CHECK(max_abs_diff(ad, sp) == 0.0);
}

TEST_CASE("evaluation is linear in a degree-1 variable") {
  auto terms = parse_hstr(
      {"__SUM[i,0,N,_X{i}_||_D{i}_]", "__SUM[i,0,N,2*pi*_v{i}_*_O{i}_]"});
  auto layout = SubsystemLayout::qubits(2);
  auto at = [&](double v0) {
    return bind_and_evaluate(terms, {{"v0", v0}, {"v1", 5.25}}, layout, 2).static_part;
  };
  // Central difference at two scales agrees with the secant slope.
  Matrix d1 = (at(5.0 + 0.5) - at(5.0 - 0.5)) / 1.0;
  Matrix d2 = (at(5.0 + 0.125) - at(5.0 - 0.125)) / 0.25;
  CHECK(max_abs_diff(d1, d2) < 1e-9);
}

TEST_CASE("duffing layout and terms") {
  SUBCASE("two-level truncation vanishes") {
    auto layout = duffing_layout(3, 2);
    Matrix d = duffing_terms(layout, {-0.3, -0.3, -0.3});
    CHECK(d.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("three-level diagonal matches the direct evaluation") {
    auto layout = duffing_layout(1, 3);
    Matrix d = duffing_terms(layout, {-0.3});
    // (delta/2)(1-n)n for n = 0, 1, 2
    CHECK(d(0, 0).real() == doctest::Approx(0.0));
    CHECK(d(1, 1).real() == doctest::Approx(0.0));
    CHECK(d(2, 2).real() == doctest::Approx(-0.3 / 2 * (1 - 2) * 2));
    CHECK(d(2, 2).real() == doctest::Approx(0.3));
  }
  SUBCASE("total dimension is the product of levels") {
    CHECK(duffing_layout(2, 3).total_dim() == 9);
  }
}

TEST_CASE("u channel frequency") {
  CHECK(u_channel_frequency({{0, {1, 0}}}, {5.0, 5.1}) == doctest::Approx(5.0));
  CHECK(u_channel_frequency({{0, {-1, 0}}, {1, {1, 0}}}, {5.0, 5.1}) ==
        doctest::Approx(0.1));
  CHECK(u_channel_frequency({}, {5.0}) == 0.0);
  CHECK_THROWS_AS(u_channel_frequency({{0, {0, 1}}}, {5.0}), EvalError);
  CHECK_THROWS_AS(u_channel_frequency({{3, {1, 0}}}, {5.0}), EvalError);
}

TEST_CASE("nonlinear terms: constant arguments fold, channel arguments flag") {
  SUBCASE("constant fold") {
    auto terms = parse_hstr({"2*pi*_v0_*sqrt(abs(cos(pi*_dc0_)))*_O{0}_"});
    auto h = bind_and_evaluate(terms, {{"v0", 5.0}, {"dc0", 1.0}},
                               SubsystemLayout::qubits(1), 1);
    // sqrt(|cos(pi)|) = 1, so the occupation term keeps its full weight.
    CHECK(h.static_part(1, 1).real() == doctest::Approx(2 * M_PI * 5.0));
    CHECK(h.static_part(0, 0).real() == doctest::Approx(0.0));
  }
  SUBCASE("channel inside a function marks a nonlinear drive") {
    // The tunable-qubit form: the detuning depends on cos of a control
    // channel, which the engine later refuses to drive.
    auto terms =
        parse_hstr({"2*pi*_v0_*sqrt(abs(cos(pi*(_dc0_+_U0_))))*_O{0}_"});
    auto h = bind_and_evaluate(terms, {{"v0", 5.0}, {"dc0", 0.5}},
                               SubsystemLayout::qubits(1), 1);
    model::Channel u0{model::Channel::Kind::Control, 0};
    REQUIRE(h.drives.count(u0) == 1);
    CHECK(h.drives.at(u0).nonlinear);
    CHECK(h.static_part.cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("pure nonlinear channel term is recorded as unsupported drive") {
    auto terms = parse_hstr({"cos(pi*(_dc0_+_U0_))"});
    auto h = bind_and_evaluate(terms, {{"dc0", 0.1}}, SubsystemLayout::qubits(1), 1);
    model::Channel u0{model::Channel::Kind::Control, 0};
    REQUIRE(h.drives.count(u0) == 1);
    CHECK(h.drives.at(u0).nonlinear);
  }
}

TEST_CASE("expression debug dump is json") {
  ExprPtr e = parse_hstr_term("__SUM[i,0,1,_X{i}_||_D{i}_]");
  Json j = expr_to_json(e);
  CHECK(j.contains("sum_over"));
  CHECK(j["body"]["product"].size() == 2);
}
