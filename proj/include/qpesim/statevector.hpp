#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qpesim/pauli.hpp"

namespace qpesim {

// Dense complex statevector. Qubit 0 is the least significant index bit, so
// appending a qubit doubles the array with a zero-filled upper half.
class Statevector {
 public:
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, std::vector<std::complex<double>> amplitudes);

  int n_qubits() const { return n_; }
  std::size_t size() const { return amp_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::complex<double>& operator[](std::size_t i) { return amp_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return amp_[i]; }
  double norm() const;

  // psi <- exp(-i theta P) psi with P given by the term's masks.
  void apply_pauli_rotation(const PauliTerm& term, double theta);
  // Same rotation restricted to the control-1 subspace.
  void apply_controlled_pauli_rotation(int control, const PauliTerm& term,
                                       double theta);
  // psi <- e^{i phi} psi, globally or on the control-1 subspace.
  void apply_phase(double phi);
  void apply_controlled_phase(int control, double phi);

  void apply_hadamard(int q);
  void apply_swap(int q1, int q2);
  // Appends a new most-significant qubit in |0>.
  void extend_with_zero_qubit();

  // Inverse QFT over the listed qubits; the first listed qubit carries the
  // most significant phase bit.
  void inverse_qft(const std::vector<int>& qubits);

  // P(x) summed over all unlisted qubits; first listed = most significant
  // bit of x.
  std::vector<double> marginal_distribution(const std::vector<int>& qubits) const;

 private:
  void rotate(std::uint64_t x, std::uint64_t z, double theta,
              std::uint64_t control_mask);
  void check_qubit(int q) const;

  int n_;
  std::vector<std::complex<double>> amp_;
};

// <psi| H |psi> including the identity contribution.
std::complex<double> expectation_value(const Statevector& psi,
                                       const QubitHamiltonian& h);

}  // namespace qpesim
