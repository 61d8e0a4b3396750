#pragma once

#include <Eigen/Dense>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qobjsim/ham/ast.hpp"
#include "qobjsim/model/channel.hpp"
#include "qobjsim/model/types.hpp"

namespace qobjsim::ham {

using Matrix = Eigen::MatrixXcd;

struct Subsystem {
  enum class Kind { Qubit, Oscillator };
  Kind kind = Kind::Qubit;
  int dim = 2;
};

struct SubsystemLayout {
  std::vector<Subsystem> subsystems;

  long long total_dim() const;
  /// Basis-index stride of subsystem k; subsystem 0 is the least
  /// significant digit, matching the qubit-0-is-LSB statevector layout.
  long long stride(size_t k) const;
  /// Index of the only oscillator subsystem, or -1 if none/ambiguous.
  int unique_oscillator() const;

  static SubsystemLayout qubits(int n);
};

/// Evaluation failure; `kind` names the failure class (UnboundVariable,
/// UnboundIndex, DimensionMismatch, NonHermitianStatic,
/// ComplexScaleUnsupported, MultipleChannels, OperatorInsideFunction).
class EvalError : public std::runtime_error {
public:
  EvalError(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct DriveCoupling {
  Matrix matrix;                 // Hermitian coupling operator
  std::set<int> subsystems;      // subsystems the operators act on
  bool nonlinear = false;        // channel appears inside cos/sqrt/...
};

/// Static part plus per-channel drive couplings, all in rad/ns given vars
/// in GHz (explicit 2*pi factors come only from the h_str text).
struct EvaluatedHamiltonian {
  SubsystemLayout layout;
  Matrix static_part;
  std::map<model::Channel, DriveCoupling> drives;

  /// Transition frequency (rad/ns) of subsystem k's 0->1 gap, read off the
  /// static diagonal. Used as the rotating-frame frequency by the engine.
  double subsystem_frame_frequency(size_t k) const;
};

/// Single-subsystem operator matrix at the given dimension. X/Y are the
/// ladder-symmetrized forms (a + a', i(a' - a)), Z = 1 - 2N, O and N count
/// excitations; all reduce to the Pauli/projector forms at dim 2.
Matrix operator_matrix(OperatorKind kind, int dim);

/// Embed a single-subsystem operator into the full product space.
Matrix embed_operator(const Matrix& op, size_t subsystem, const SubsystemLayout& layout);

EvaluatedHamiltonian bind_and_evaluate(const std::vector<ExprPtr>& terms,
                                       const std::map<std::string, double>& vars,
                                       const SubsystemLayout& layout, int n_qubits);

/// Parse + evaluate a ham_dict against a layout.
EvaluatedHamiltonian evaluate_hamiltonian(const model::HamiltonianDict& dict,
                                          const SubsystemLayout& layout, int n_qubits);

SubsystemLayout duffing_layout(int n_qubits, int levels);

/// Sum of (delta_i/2)(1 - a'a)a'a over the layout's subsystems.
Matrix duffing_terms(const SubsystemLayout& layout, const std::vector<double>& anharmonicities);

/// U-channel LO frequency in GHz: sum of scale.re * qubit_lo_freq[q].
/// Scales with a nonzero imaginary part have no frequency meaning and are
/// rejected.
double u_channel_frequency(const std::vector<model::UChannelLoTerm>& spec,
                           const std::vector<double>& qubit_lo_freq);

}  // namespace qobjsim::ham
