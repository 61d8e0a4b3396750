#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qobjsim::qasm {

using Matrix = Eigen::MatrixXcd;

/// Failure while reading a qasm_def body; `position` is a byte offset into
/// the source string.
class DefError : public std::runtime_error {
public:
  DefError(size_t position, const std::string& msg)
      : std::runtime_error("offset " + std::to_string(position) + ": " + msg),
        position_(position) {}
  size_t position() const { return position_; }

private:
  size_t position_;
};

class GateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic over gate parameters, reals and pi with + - * /.
struct ParamExpr {
  struct Const {
    double value;
  };
  struct Param {
    size_t index;
  };
  struct Unary {
    std::shared_ptr<ParamExpr> arg;
  };
  struct Binary {
    char op;  // + - * /
    std::shared_ptr<ParamExpr> lhs;
    std::shared_ptr<ParamExpr> rhs;
  };
  using Node = std::variant<Const, Param, Unary, Binary>;
  Node node = Const{0.0};

  double eval(const std::vector<double>& params) const;
};

/// One body statement of a qasm_def: U(e1,e2,e3) q; or CX a,b;
struct DefStatement {
  enum class Kind { U, CX };
  Kind kind = Kind::U;
  std::array<ParamExpr, 3> angles;  // U only
  int arg0 = 0;                     // formal argument index
  int arg1 = 0;                     // CX target
};

struct ParsedGateDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> args;
  std::vector<DefStatement> statements;
};

/// Restricted grammar: gate NAME(params?) args { (U(...) q; | CX a,b;)* }
ParsedGateDef parse_qasm_def(const std::string& src);

/// OpenQASM 2.0 base gate U(theta, phi, lambda).
Matrix u_matrix(double theta, double phi, double lambda);

/// CX with the first argument as control; the matrix index uses the first
/// argument as its least significant bit.
Matrix cx_matrix();

/// Embed a k-qubit gate acting on `positions` (bit j of the gate index is
/// positions[j]) into an n-qubit unitary.
Matrix embed_gate(const Matrix& gate, const std::vector<int>& positions, int n_qubits);

/// Matrix for a named gate: builtin u1/u2/u3/cx/id, otherwise expanded from
/// the supplied definitions. Composite statements multiply in circuit order.
Matrix gate_matrix(const std::string& name, const std::vector<double>& params,
                   const std::map<std::string, ParsedGateDef>& defs);

/// Number of qubits the named gate acts on.
int gate_arity(const std::string& name, const std::map<std::string, ParsedGateDef>& defs);

}  // namespace qobjsim::qasm
