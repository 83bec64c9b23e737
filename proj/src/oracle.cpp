#include "qpesim/oracle.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

void fill_index(SectorBasis& b) {
  b.index.reserve(b.states.size());
  for (std::size_t i = 0; i < b.states.size(); ++i) b.index[b.states[i]] = i;
}

std::vector<std::uint64_t> combinations(int l, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > l) return out;
  // Gosper-style enumeration in ascending numeric order.
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << l;
  while (v < limit) {
    out.push_back(v);
    if (v == 0) break;
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

std::uint64_t cumulative_xor(std::uint64_t occ, int n) {
  std::uint64_t p = 0;
  int acc = 0;
  for (int j = 0; j < n; ++j) {
    acc ^= static_cast<int>((occ >> j) & 1);
    p |= static_cast<std::uint64_t>(acc) << j;
  }
  return p;
}

std::uint64_t delete_bit(std::uint64_t v, int pos) {
  const std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return low | ((v >> (pos + 1)) << pos);
}

std::uint64_t insert_bit(std::uint64_t v, int pos, std::uint64_t bit) {
  const std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return low | (bit << pos) | ((v >> pos) << (pos + 1));
}

void check_sector(std::uint64_t occ, int l, int n_alpha, int n_beta) {
  const std::uint64_t amask = (std::uint64_t{1} << l) - 1;
  if (std::popcount(occ & amask) != n_alpha ||
      std::popcount(occ >> l) != n_beta)
    throw SectorError("occupation pattern outside the (n_alpha, n_beta) sector");
}

}  // namespace

SectorBasis make_sector_basis(int l, int n_alpha, int n_beta) {
  if (l < 1 || l > 16) throw CapacityError("spatial orbital count out of range");
  if (n_alpha < 0 || n_alpha > l || n_beta < 0 || n_beta > l)
    throw SectorError("electron counts incompatible with orbital count");
  SectorBasis b;
  b.n_qubits = 2 * l;
  const auto alphas = combinations(l, n_alpha);
  const auto betas = combinations(l, n_beta);
  b.states.reserve(alphas.size() * betas.size());
  for (std::uint64_t bb : betas)
    for (std::uint64_t aa : alphas) b.states.push_back(aa | (bb << l));
  std::sort(b.states.begin(), b.states.end());
  fill_index(b);
  return b;
}

SectorBasis make_full_basis(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24)
    throw CapacityError("full basis too large");
  SectorBasis b;
  b.n_qubits = n_qubits;
  b.states.resize(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < b.states.size(); ++i) b.states[i] = i;
  fill_index(b);
  return b;
}

Eigen::MatrixXd build_sector_matrix(const QubitHamiltonian& h,
                                    const SectorBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  m.diagonal().setConstant(h.identity_coefficient);
  for (const auto& t : h.terms) {
    const int n_y = std::popcount(t.x_mask & t.z_mask);
    if (n_y & 1)
      throw ConsistencyError("odd-Y Pauli string makes the sector matrix complex");
    const double y_sign = (n_y & 2) ? -1.0 : 1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const std::uint64_t b = basis.states[i];
      const auto it = basis.index.find(b ^ t.x_mask);
      if (it == basis.index.end()) continue;
      const double zf = (std::popcount(b & t.z_mask) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(it->second), i) += t.coefficient * y_sign * zf;
    }
  }
  return m;
}

SpectrumResult diagonalize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() ||
      (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw HermiticityError("matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw HermiticityError("eigendecomposition failed to converge");
  SpectrumResult r;
  r.eigenvalues = solver.eigenvalues();
  r.eigenvectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < r.eigenvectors.cols(); ++c) {
    for (Eigen::Index row = 0; row < r.eigenvectors.rows(); ++row) {
      const double v = r.eigenvectors(row, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0) r.eigenvectors.col(c) = -r.eigenvectors.col(c);
        break;
      }
    }
  }
  r.ground_energy = r.eigenvalues(0);
  return r;
}

std::uint64_t determinant_to_qubit_index(std::uint64_t occupations,
                                         EncodingKind kind, int l,
                                         int n_alpha, int n_beta) {
  check_sector(occupations, l, n_alpha, n_beta);
  if (kind == EncodingKind::Jw) return occupations;
  const std::uint64_t p = cumulative_xor(occupations, 2 * l);
  if (kind == EncodingKind::Parity) return p;
  return delete_bit(delete_bit(p, 2 * l - 1), l - 1);
}

std::uint64_t qubit_index_to_determinant(std::uint64_t index,
                                         EncodingKind kind, int l,
                                         int n_alpha, int n_beta) {
  std::uint64_t p = index;
  if (kind == EncodingKind::JwTapered) {
    // The removed qubits hold the block parities, constant on the sector.
    p = insert_bit(p, l - 1, static_cast<std::uint64_t>(n_alpha & 1));
    p = insert_bit(p, 2 * l - 1,
                   static_cast<std::uint64_t>((n_alpha + n_beta) & 1));
  }
  std::uint64_t occ = p;
  if (kind != EncodingKind::Jw) {
    occ = 0;
    int prev = 0;
    for (int j = 0; j < 2 * l; ++j) {
      const int bit = static_cast<int>((p >> j) & 1);
      occ |= static_cast<std::uint64_t>(bit ^ prev) << j;
      prev = bit;
    }
  }
  check_sector(occ, l, n_alpha, n_beta);
  return occ;
}

EncodedSystem make_encoded_system(const SpatialIntegrals& s,
                                  EncodingKind kind) {
  EncodedSystem sys;
  sys.kind = kind;
  sys.l = s.n_orbitals;
  sys.n_alpha = (s.n_electrons + s.ms2) / 2;
  sys.n_beta = s.n_electrons - sys.n_alpha;
  const SpinOrbitalIntegrals so = to_spin_orbitals(s, sys.n_alpha, sys.n_beta);
  const QubitHamiltonian jw = jordan_wigner(so);
  sys.sector = make_sector_basis(sys.l, sys.n_alpha, sys.n_beta);
  sys.spectrum = diagonalize(build_sector_matrix(jw, sys.sector));
  sys.h = (kind == EncodingKind::Jw) ? jw : encode_hamiltonian(so, kind);
  return sys;
}

Statevector sector_vector_to_state(const EncodedSystem& sys,
                                   const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != sys.sector.size())
    throw ConsistencyError("sector vector length mismatch");
  std::vector<std::complex<double>> amp(
      std::size_t{1} << sys.n_system_qubits(), {0.0, 0.0});
  for (std::size_t i = 0; i < sys.sector.size(); ++i) {
    const std::uint64_t q = determinant_to_qubit_index(
        sys.sector.states[i], sys.kind, sys.l, sys.n_alpha, sys.n_beta);
    amp[q] = v(static_cast<Eigen::Index>(i));
  }
  return Statevector(sys.n_system_qubits(), std::move(amp));
}

std::uint64_t hartree_fock_occupations(int l, int n_alpha, int n_beta) {
  const std::uint64_t a = (std::uint64_t{1} << n_alpha) - 1;
  const std::uint64_t b = (std::uint64_t{1} << n_beta) - 1;
  return a | (b << l);
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& spectrum) {
  os << "index,energy\n";
  char buf[64];
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.12g\n",
                  static_cast<long long>(i), spectrum.eigenvalues(i));
    os << buf;
  }
}

}  // namespace qpesim
