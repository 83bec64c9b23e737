#include "qpesim/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

bool parity(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30)
    throw CapacityError("qubit count out of range");
  amp_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amp_[0] = {1.0, 0.0};
}

Statevector::Statevector(int n_qubits,
                         std::vector<std::complex<double>> amplitudes)
    : n_(n_qubits), amp_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30)
    throw CapacityError("qubit count out of range");
  if (amp_.size() != (std::size_t{1} << n_qubits))
    throw ConsistencyError("amplitude array length is not 2^n");
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw IndexError("qubit index out of range");
}

// Core kernel: psi <- exp(-i theta P) psi on the subspace selected by
// control_mask (all mask bits set). P|b> = i^nY (-1)^popcount(b&z) |b^x>.
void Statevector::rotate(std::uint64_t x, std::uint64_t z, double theta,
                         std::uint64_t control_mask) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::size_t size = amp_.size();

  if (x == 0) {
    // Diagonal: e^{-i theta (-1)^parity}.
    const std::complex<double> even{c, -s}, odd{c, s};
    for (std::size_t b = 0; b < size; ++b) {
      if ((b & control_mask) != control_mask) continue;
      amp_[b] *= parity(b & z) ? odd : even;
    }
    return;
  }

  const int n_y = std::popcount(x & z);
  const std::complex<double> base = -kI * s * i_pow(n_y);
  const std::complex<double> base2 = (n_y & 1) ? -base : base;
  const std::uint64_t pivot_bit =
      std::uint64_t{1} << (63 - std::countl_zero(x));

  // Enumerate pair representatives b with the pivot bit clear; the partner
  // is b ^ x. Blocked iteration keeps the inner run contiguous.
  for (std::size_t block = 0; block < size; block += 2 * pivot_bit) {
    for (std::size_t off = 0; off < pivot_bit; ++off) {
      const std::size_t b = block | off;
      if ((b & control_mask) != control_mask) continue;
      const std::size_t b2 = b ^ x;
      const double f = parity(b & z) ? -1.0 : 1.0;
      const std::complex<double> t1 = amp_[b], t2 = amp_[b2];
      amp_[b] = c * t1 + f * base2 * t2;
      amp_[b2] = c * t2 + f * base * t1;
    }
  }
}

void Statevector::apply_pauli_rotation(const PauliTerm& term, double theta) {
  if ((term.x_mask | term.z_mask) == 0)
    throw IdentityRotationError("rotation about the identity string");
  if ((term.x_mask | term.z_mask) >> n_)
    throw IndexError("Pauli mask exceeds register");
  rotate(term.x_mask, term.z_mask, theta, 0);
}

void Statevector::apply_controlled_pauli_rotation(int control,
                                                  const PauliTerm& term,
                                                  double theta) {
  check_qubit(control);
  if ((term.x_mask | term.z_mask) == 0)
    throw IdentityRotationError("rotation about the identity string");
  if ((term.x_mask | term.z_mask) >> n_)
    throw IndexError("Pauli mask exceeds register");
  const std::uint64_t cbit = std::uint64_t{1} << control;
  if ((term.x_mask | term.z_mask) & cbit)
    throw OverlapError("control qubit lies in the rotation support");
  rotate(term.x_mask, term.z_mask, theta, cbit);
}

void Statevector::apply_phase(double phi) {
  const std::complex<double> ph = std::exp(kI * phi);
  for (auto& a : amp_) a *= ph;
}

void Statevector::apply_controlled_phase(int control, double phi) {
  check_qubit(control);
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::complex<double> ph = std::exp(kI * phi);
  for (std::size_t b = 0; b < amp_.size(); ++b)
    if (b & cbit) amp_[b] *= ph;
}

void Statevector::apply_hadamard(int q) {
  check_qubit(q);
  const std::uint64_t bit = std::uint64_t{1} << q;
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t block = 0; block < amp_.size(); block += 2 * bit) {
    for (std::size_t off = 0; off < bit; ++off) {
      const std::size_t b = block | off;
      const std::complex<double> t1 = amp_[b], t2 = amp_[b | bit];
      amp_[b] = r * (t1 + t2);
      amp_[b | bit] = r * (t1 - t2);
    }
  }
}

void Statevector::apply_swap(int q1, int q2) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw IndexError("swap needs two distinct qubits");
  const std::uint64_t b1 = std::uint64_t{1} << q1;
  const std::uint64_t b2 = std::uint64_t{1} << q2;
  for (std::size_t b = 0; b < amp_.size(); ++b)
    if ((b & b1) && !(b & b2)) std::swap(amp_[b], amp_[(b ^ b1) | b2]);
}

void Statevector::extend_with_zero_qubit() {
  if (n_ >= 30) throw CapacityError("register already at capacity");
  amp_.resize(amp_.size() * 2, {0.0, 0.0});
  ++n_;
}

namespace {

// Phase on amplitudes with both bits set (symmetric two-qubit gate).
void two_qubit_phase(std::vector<std::complex<double>>& amp, std::uint64_t m1,
                     std::uint64_t m2, double phi) {
  const std::complex<double> ph = std::exp(kI * phi);
  const std::uint64_t both = m1 | m2;
  for (std::size_t b = 0; b < amp.size(); ++b)
    if ((b & both) == both) amp[b] *= ph;
}

void check_distinct(const std::vector<int>& qubits, int n) {
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) throw IndexError("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw IndexError("duplicate qubit index");
    seen |= bit;
  }
}

}  // namespace

void Statevector::inverse_qft(const std::vector<int>& qubits) {
  check_distinct(qubits, n_);
  const int nq = static_cast<int>(qubits.size());
  // Reverse of the textbook QFT circuit: undo the trailing bit-reversal
  // swaps, then the rotations and Hadamards in reverse order with
  // conjugated angles.
  for (int j = 0; j < nq / 2; ++j) apply_swap(qubits[j], qubits[nq - 1 - j]);
  for (int j = nq - 1; j >= 0; --j) {
    for (int k = nq - 1; k > j; --k) {
      const double phi = -2.0 * std::numbers::pi /
                         static_cast<double>(std::uint64_t{1} << (k - j + 1));
      two_qubit_phase(amp_, std::uint64_t{1} << qubits[k],
                      std::uint64_t{1} << qubits[j], phi);
    }
    apply_hadamard(qubits[j]);
  }
}

std::vector<double> Statevector::marginal_distribution(
    const std::vector<int>& qubits) const {
  check_distinct(qubits, n_);
  const int nq = static_cast<int>(qubits.size());
  std::vector<double> out(std::size_t{1} << nq, 0.0);
  for (std::size_t b = 0; b < amp_.size(); ++b) {
    const double p = std::norm(amp_[b]);
    if (p == 0.0) continue;
    std::size_t x = 0;
    for (int i = 0; i < nq; ++i)
      x |= ((b >> qubits[i]) & 1) << (nq - 1 - i);
    out[x] += p;
  }
  return out;
}

std::complex<double> expectation_value(const Statevector& psi,
                                       const QubitHamiltonian& h) {
  if (psi.n_qubits() != h.n_qubits)
    throw ConsistencyError("statevector and Hamiltonian qubit counts differ");
  const std::size_t size = psi.size();
  std::complex<double> acc = 0.0;
  for (std::size_t b = 0; b < size; ++b)
    acc += h.identity_coefficient * std::norm(psi[b]);
  for (const auto& t : h.terms) {
    const std::complex<double> ph0 = i_pow(std::popcount(t.x_mask & t.z_mask));
    std::complex<double> term_acc = 0.0;
    for (std::size_t b = 0; b < size; ++b) {
      const double f = parity(b & t.z_mask) ? -1.0 : 1.0;
      term_acc += std::conj(psi[b ^ t.x_mask]) * (f * psi[b]);
    }
    acc += t.coefficient * ph0 * term_acc;
  }
  return acc;
}

}  // namespace qpesim
