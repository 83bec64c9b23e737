#pragma once

#include <iosfwd>
#include <vector>

namespace qpesim {

// Spatial-orbital integrals in Hartree. g uses the chemist convention
// (pq|rs); both h and g are kept fully symmetrized.
struct SpatialIntegrals {
  int n_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;   // includes nuclear repulsion
  std::vector<double> h;      // l*l
  std::vector<double> g;      // l^4

  double& h_at(int p, int q);
  double h_at(int p, int q) const;
  double& g_at(int p, int q, int r, int s);
  double g_at(int p, int q, int r, int s) const;
};

// Spin-orbital integrals with blocked ordering: 0..l-1 are alpha, l..2l-1
// are beta of the same spatial orbitals. g_so holds physicist-convention
// <pq|rs> (the antisymmetrized combination is formed downstream).
struct SpinOrbitalIntegrals {
  int n_spin_orbitals = 0;
  int n_alpha = 0;
  int n_beta = 0;
  double core_energy = 0.0;
  std::vector<double> h_so;   // (2l)^2
  std::vector<double> g_so;   // (2l)^4

  double h_at(int p, int q) const;
  double g_at(int p, int q, int r, int s) const;  // <pq|rs>
};

struct OrbitalRotation {
  int n = 0;
  std::vector<double> v;      // n*n, column k = new orbital k

  double at(int row, int col) const { return v[static_cast<std::size_t>(row) * n + col]; }
};

// Reads an FCIDUMP stream: a namelist header with NORB/NELEC/MS2 terminated
// by &END or /, then `value i j k l` records (1-based; i=j=k=l=0 is the core
// energy, k=l=0 is h, anything else chemist (ij|kl)). Symmetry-equivalent
// entries are filled by 8-fold expansion.
SpatialIntegrals parse_fcidump(std::istream& in);
SpatialIntegrals parse_fcidump_file(const std::string& path);

SpinOrbitalIntegrals to_spin_orbitals(const SpatialIntegrals& s, int n_alpha,
                                      int n_beta);

// Basis change h' = V^T h V, g' = four-index transform, core unchanged.
SpatialIntegrals rotate_integrals(const SpatialIntegrals& s,
                                  const OrbitalRotation& v);

}  // namespace qpesim
