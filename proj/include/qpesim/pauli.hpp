#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qpesim {

// A weighted Pauli string in mask form. Bit q of x_mask set means qubit q
// carries X or Y; bit q of z_mask means Z or Y; both set means Y. The
// operator is the plain tensor product of those letters -- no implicit
// global phase, so e.g. (x,z)=(1,1) on one qubit is exactly Y, not iXZ.
struct PauliTerm {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  double coefficient = 0.0;
};

// Letter of `term` on qubit q, one of 'I', 'X', 'Y', 'Z'.
char pauli_letter(const PauliTerm& term, int qubit);

// String of letters, qubit 0 first.
std::string pauli_string(const PauliTerm& term, int n_qubits);

// Rank of the letter string under I<X<Y<Z with qubit 0 compared first;
// packs two bits per qubit so that integer order equals string order.
std::uint64_t lexicographic_rank(const PauliTerm& term, int n_qubits);

// Phase of the product: letters(x1,z1) * letters(x2,z2)
//   = product_phase(...) * letters(x1^x2, z1^z2).
// Always one of {1, -1, i, -i}.
std::complex<double> product_phase(std::uint64_t x1, std::uint64_t z1,
                                   std::uint64_t x2, std::uint64_t z2);

enum class Ordering { Magnitude, Lexicographic };

struct QubitHamiltonian {
  int n_qubits = 0;
  double identity_coefficient = 0.0;
  std::vector<PauliTerm> terms;
};

// Merges duplicate masks, folds identity terms into identity_coefficient,
// drops |coefficient| < prune_threshold, and sorts terms by lexicographic
// rank so equal Hamiltonians compare equal.
void canonicalize(QubitHamiltonian& h, double prune_threshold = 1e-12);

// Returns a copy with the term list permuted per `strategy`. Magnitude is
// descending |coefficient| with lexicographic tie-break; Lexicographic is
// ascending letter-string order.
QubitHamiltonian order_terms(const QubitHamiltonian& h, Ordering strategy);

// One term per line as "+w.wwwwwwwwwwww  LETTERS" (qubit 0 leftmost),
// identity line first.
std::string to_text(const QubitHamiltonian& h);

}  // namespace qpesim
