#include "qobjsim/qasm/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qobjsim::qasm {

using Complex = std::complex<double>;

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 24) {
    throw std::invalid_argument("statevector supports 0..24 qubits");
  }
  amp_.assign(1ULL << n_qubits, Complex(0, 0));
  amp_[0] = Complex(1, 0);
}

void Statevector::apply_1q(const Eigen::MatrixXcd& m, int qubit) {
  size_t bit = 1ULL << qubit;
  size_t dim = amp_.size();
  for (size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    Complex a0 = amp_[i];
    Complex a1 = amp_[i | bit];
    amp_[i] = m(0, 0) * a0 + m(0, 1) * a1;
    amp_[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void Statevector::apply_2q(const Eigen::MatrixXcd& m, int q0, int q1) {
  size_t b0 = 1ULL << q0;
  size_t b1 = 1ULL << q1;
  size_t dim = amp_.size();
  for (size_t i = 0; i < dim; ++i) {
    if (i & (b0 | b1)) continue;
    size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    Complex in[4] = {amp_[idx[0]], amp_[idx[1]], amp_[idx[2]], amp_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      Complex v(0, 0);
      for (int c = 0; c < 4; ++c) v += m(r, c) * in[c];
      amp_[idx[r]] = v;
    }
  }
}

void Statevector::apply_gate(const Eigen::MatrixXcd& m, const std::vector<int>& qubits) {
  if (qubits.size() == 1) {
    apply_1q(m, qubits[0]);
    return;
  }
  if (qubits.size() == 2) {
    apply_2q(m, qubits[0], qubits[1]);
    return;
  }
  // Rarely used (wide composite defs); gather/scatter per amplitude group.
  size_t k = qubits.size();
  size_t small = 1ULL << k;
  size_t mask = 0;
  for (int q : qubits) mask |= 1ULL << q;
  std::vector<Complex> in(small);
  for (size_t base = 0; base < amp_.size(); ++base) {
    if (base & mask) continue;
    for (size_t s = 0; s < small; ++s) {
      size_t idx = base;
      for (size_t j = 0; j < k; ++j) {
        if (s & (1ULL << j)) idx |= 1ULL << qubits[j];
      }
      in[s] = amp_[idx];
    }
    for (size_t r = 0; r < small; ++r) {
      Complex v(0, 0);
      for (size_t c = 0; c < small; ++c) v += m(r, c) * in[c];
      size_t idx = base;
      for (size_t j = 0; j < k; ++j) {
        if (r & (1ULL << j)) idx |= 1ULL << qubits[j];
      }
      amp_[idx] = v;
    }
  }
}

double Statevector::probability_one(int qubit) const {
  size_t bit = 1ULL << qubit;
  double p = 0.0;
  for (size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) p += std::norm(amp_[i]);
  }
  return p;
}

int Statevector::measure(int qubit, ShotRng& rng) {
  double p1 = probability_one(qubit);
  int outcome = rng.next_double() < p1 ? 1 : 0;
  double keep = outcome ? p1 : 1.0 - p1;
  if (keep <= 0.0) {
    // Numerically impossible branch; fall back to the certain outcome.
    outcome = 1 - outcome;
    keep = 1.0 - keep;
  }
  double scale = 1.0 / std::sqrt(keep);
  size_t bit = 1ULL << qubit;
  for (size_t i = 0; i < amp_.size(); ++i) {
    bool one = (i & bit) != 0;
    if (one == (outcome == 1)) {
      amp_[i] *= scale;
    } else {
      amp_[i] = Complex(0, 0);
    }
  }
  return outcome;
}

void Statevector::reset(int qubit, ShotRng& rng) {
  if (measure(qubit, rng) == 1) {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    apply_1q(x, qubit);
  }
}

double Statevector::norm() const {
  double n = 0.0;
  for (const auto& a : amp_) n += std::norm(a);
  return std::sqrt(n);
}

}  // namespace qobjsim::qasm
