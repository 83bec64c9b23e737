#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "qpesim/encoding.hpp"
#include "qpesim/integrals.hpp"
#include "qpesim/pauli.hpp"
#include "qpesim/statevector.hpp"

namespace qpesim {

// Basis the exact reference works in: either the (n_alpha, n_beta)
// occupation sector in blocked layout, or the full space of a tapered
// register (which mixes fermionic sectors by construction).
struct SectorBasis {
  int n_qubits = 0;
  std::vector<std::uint64_t> states;  // ascending bitstrings
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::size_t size() const { return states.size(); }
};

SectorBasis make_sector_basis(int l, int n_alpha, int n_beta);
SectorBasis make_full_basis(int n_qubits);

// Dense Hamiltonian on the basis. Electronic Hamiltonians with real
// integrals carry only even-Y Pauli strings, so the matrix is real
// symmetric; an element that would be imaginary raises ConsistencyError.
Eigen::MatrixXd build_sector_matrix(const QubitHamiltonian& h,
                                    const SectorBasis& basis);

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
  double ground_energy = 0.0;
};

// Full symmetric eigendecomposition. Degenerate-subspace vectors are made
// deterministic by flipping each column so its first component larger than
// 1e-12 in magnitude is positive.
SpectrumResult diagonalize(const Eigen::MatrixXd& m);

// Computational-basis index of a Slater determinant under the encoding.
// JW keeps the occupation bitstring verbatim (creation operators applied in
// ascending order give phase +1); parity stores cumulative XOR; tapering
// then deletes the two parity qubits l-1 and 2l-1.
std::uint64_t determinant_to_qubit_index(std::uint64_t occupations,
                                         EncodingKind kind, int l,
                                         int n_alpha, int n_beta);
std::uint64_t qubit_index_to_determinant(std::uint64_t index,
                                         EncodingKind kind, int l,
                                         int n_alpha, int n_beta);

// One system, encoded and exactly solved: the qubit Hamiltonian actually
// evolved, plus the sector spectrum backing Trotter-free references and
// full-CI input preparation.
struct EncodedSystem {
  EncodingKind kind = EncodingKind::Jw;
  int l = 0;
  int n_alpha = 0;
  int n_beta = 0;
  QubitHamiltonian h;      // on n_system_qubits
  SectorBasis sector;      // fermionic (n_alpha, n_beta) determinants
  SpectrumResult spectrum; // exact spectrum on that sector

  int n_system_qubits() const { return h.n_qubits; }
};

EncodedSystem make_encoded_system(const SpatialIntegrals& s, EncodingKind kind);

// Injects a sector-coordinate vector into the encoded qubit register.
Statevector sector_vector_to_state(const EncodedSystem& sys,
                                   const Eigen::VectorXd& v);

// Occupation bitstring of the lowest-orbital determinant (alpha block then
// beta block), and its position in the sector basis.
std::uint64_t hartree_fock_occupations(int l, int n_alpha, int n_beta);

void write_spectrum_csv(std::ostream& os, const SpectrumResult& spectrum);

}  // namespace qpesim
