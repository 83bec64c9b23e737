#pragma once

#include "qpesim/integrals.hpp"
#include "qpesim/pauli.hpp"

namespace qpesim {

enum class EncodingKind { Jw, Parity, JwTapered };

// Jordan-Wigner map of the second-quantized Hamiltonian: a_p^dag becomes
// (X_p - iY_p)/2 with a Z string on qubits below p. The core energy is
// folded into identity_coefficient; the result is canonical.
QubitHamiltonian jordan_wigner(const SpinOrbitalIntegrals& s);

// Conjugates every term by the CNOT ladder that takes occupation qubits to
// cumulative-parity qubits (qubit j stores the parity of occupations 0..j).
QubitHamiltonian parity_transform(const QubitHamiltonian& h);
QubitHamiltonian parity_transform_inverse(const QubitHamiltonian& h);

// Removes qubits l-1 (alpha parity) and 2l-1 (total parity) from a
// parity-encoded Hamiltonian, replacing their Z letters by the sector signs
// (-1)^n_alpha and (-1)^(n_alpha+n_beta). Fails with SymmetryError if any
// term carries X or Y there.
QubitHamiltonian taper_two_qubits(const QubitHamiltonian& parity_h,
                                  int n_alpha, int n_beta);

// jordan_wigner composed with the transforms selected by `kind`.
QubitHamiltonian encode_hamiltonian(const SpinOrbitalIntegrals& s,
                                    EncodingKind kind);

}  // namespace qpesim
