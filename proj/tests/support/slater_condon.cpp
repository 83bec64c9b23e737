#include "support/slater_condon.hpp"

#include <bit>
#include <stdexcept>

namespace testsup {
namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

// Fermi sign of acting with a_p or a^dag_p: parity of the occupied modes
// below p. `det` is updated in place; returns 0 on an illegal application.
int annihilate(std::uint64_t& det, int p) {
  const std::uint64_t bit = std::uint64_t(1) << p;
  if (!(det & bit)) return 0;
  const int sign = popcount(det & (bit - 1)) % 2 ? -1 : 1;
  det ^= bit;
  return sign;
}

int create(std::uint64_t& det, int p) {
  const std::uint64_t bit = std::uint64_t(1) << p;
  if (det & bit) return 0;
  const int sign = popcount(det & (bit - 1)) % 2 ? -1 : 1;
  det |= bit;
  return sign;
}

std::vector<int> occupied_list(std::uint64_t det) {
  std::vector<int> occ;
  while (det) {
    occ.push_back(std::countr_zero(det));
    det &= det - 1;
  }
  return occ;
}

}  // namespace

std::vector<std::uint64_t> sector_determinants(int l, int n_alpha,
                                               int n_beta) {
  std::vector<std::uint64_t> dets;
  const std::uint64_t lim = std::uint64_t(1) << (2 * l);
  const std::uint64_t amask = (std::uint64_t(1) << l) - 1;
  for (std::uint64_t d = 0; d < lim; ++d)
    if (popcount(d & amask) == n_alpha && popcount(d >> l) == n_beta)
      dets.push_back(d);
  return dets;
}

double slater_condon_element(const qpesim::SpinOrbitalIntegrals& so,
                             std::uint64_t bra, std::uint64_t ket) {
  const std::uint64_t diff = bra ^ ket;
  const int ndiff = popcount(diff);
  if (ndiff > 4) return 0.0;

  if (ndiff == 0) {
    double e = so.core_energy;
    const auto occ = occupied_list(ket);
    for (int p : occ) {
      e += so.h_at(p, p);
      for (int q : occ)
        e += 0.5 * (so.g_at(p, q, p, q) - so.g_at(p, q, q, p));
    }
    return e;
  }

  if (ndiff == 2) {
    const int p = std::countr_zero(diff & ket);  // occupied in ket only
    const int q = std::countr_zero(diff & bra);  // occupied in bra only
    std::uint64_t d = ket;
    int sign = annihilate(d, p);
    sign *= create(d, q);
    double e = so.h_at(q, p);
    for (std::uint64_t rest = ket & ~diff; rest;) {
      const int m = std::countr_zero(rest);
      rest &= rest - 1;
      e += so.g_at(q, m, p, m) - so.g_at(q, m, m, p);
    }
    return sign * e;
  }

  if (ndiff == 4) {
    const auto removed = occupied_list(diff & ket);  // p < q
    const auto added = occupied_list(diff & bra);    // r < s
    if (removed.size() != 2 || added.size() != 2) return 0.0;
    const int p = removed[0], q = removed[1];
    const int r = added[0], s = added[1];
    // sign of <bra| a+_r a+_s a_q a_p |ket>
    std::uint64_t d = ket;
    int sign = annihilate(d, p);
    sign *= annihilate(d, q);
    sign *= create(d, s);
    sign *= create(d, r);
    return sign * (so.g_at(r, s, p, q) - so.g_at(r, s, q, p));
  }

  return 0.0;
}

Eigen::MatrixXd ci_matrix(const qpesim::SpinOrbitalIntegrals& so,
                          const std::vector<std::uint64_t>& dets) {
  const Eigen::Index n = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double e = slater_condon_element(so, dets[i], dets[j]);
      m(i, j) = e;
      m(j, i) = e;
    }
  return m;
}

double ci_ground_energy(const qpesim::SpinOrbitalIntegrals& so, int l,
                        int n_alpha, int n_beta) {
  const auto dets = sector_determinants(l, n_alpha, n_beta);
  if (dets.empty()) throw std::runtime_error("empty determinant sector");
  const Eigen::MatrixXd m = ci_matrix(so, dets);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("CI eigensolve failed");
  return es.eigenvalues()(0);
}

}  // namespace testsup
