#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qobjsim/common/rng.hpp"

namespace qobjsim::qasm {

/// Dense statevector over n qubits. Qubit 0 is the least significant bit of
/// the amplitude index, matching the memory-slot convention.
class Statevector {
public:
  explicit Statevector(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

  void apply_1q(const Eigen::MatrixXcd& m, int qubit);
  /// 4x4 gate; matrix index bit 0 belongs to q0, bit 1 to q1.
  void apply_2q(const Eigen::MatrixXcd& m, int q0, int q1);
  void apply_gate(const Eigen::MatrixXcd& m, const std::vector<int>& qubits);

  /// Probability of reading 1 on the qubit.
  double probability_one(int qubit) const;

  /// Projective measurement: samples, collapses, renormalizes.
  int measure(int qubit, ShotRng& rng);

  /// Measure and flip back to |0> if needed.
  void reset(int qubit, ShotRng& rng);

  double norm() const;

private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace qobjsim::qasm
