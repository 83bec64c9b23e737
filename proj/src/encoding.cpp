#include "qpesim/encoding.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <unordered_map>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

struct RawTerm {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::complex<double> c;
};

// a_p (dag=false) or a_p^dag (dag=true) as two Pauli strings.
std::array<RawTerm, 2> ladder(int p, bool dag) {
  const std::uint64_t bit = 1ull << p;
  const std::uint64_t tail = bit - 1;
  const std::complex<double> y_coef(0.0, dag ? -0.5 : 0.5);
  return {RawTerm{bit, tail, {0.5, 0.0}}, RawTerm{bit, tail | bit, y_coef}};
}

RawTerm mul(const RawTerm& a, const RawTerm& b) {
  return {a.x ^ b.x, a.z ^ b.z,
          a.c * b.c * product_phase(a.x, a.z, b.x, b.z)};
}

using TermMap = std::unordered_map<std::uint64_t, std::complex<double>>;

std::uint64_t key_of(std::uint64_t x, std::uint64_t z) { return (x << 32) | z; }

void add(TermMap& acc, const RawTerm& t) { acc[key_of(t.x, t.z)] += t.c; }

QubitHamiltonian collect(const TermMap& acc, int n_qubits, double core) {
  QubitHamiltonian h;
  h.n_qubits = n_qubits;
  h.identity_coefficient = core;
  h.terms.reserve(acc.size());
  for (const auto& [key, c] : acc) {
    if (std::abs(c.imag()) > 1e-10)
      throw ConsistencyError("non-Hermitian accumulation in encoding");
    h.terms.push_back(PauliTerm{key >> 32, key & 0xffffffffull, c.real()});
  }
  canonicalize(h);
  return h;
}

// Conjugation by one CNOT(control -> target): X on the control propagates
// to the target, Z on the target propagates to the control, no phase in the
// symplectic picture. The letter-tensor convention regains a sign from the
// change in Y count (always even): i^(Y_before - Y_after).
void cnot_conjugate(std::uint64_t& x, std::uint64_t& z, int control, int target) {
  if ((x >> control) & 1) x ^= 1ull << target;
  if ((z >> target) & 1) z ^= 1ull << control;
}

QubitHamiltonian ladder_conjugate(const QubitHamiltonian& h, bool inverse) {
  QubitHamiltonian out;
  out.n_qubits = h.n_qubits;
  out.identity_coefficient = h.identity_coefficient;
  out.terms.reserve(h.terms.size());
  for (const auto& t : h.terms) {
    std::uint64_t x = t.x_mask, z = t.z_mask;
    const int y_in = std::popcount(x & z);
    if (inverse) {
      for (int q = h.n_qubits - 2; q >= 0; --q) cnot_conjugate(x, z, q, q + 1);
    } else {
      for (int q = 0; q < h.n_qubits - 1; ++q) cnot_conjugate(x, z, q, q + 1);
    }
    const int dy = ((y_in - std::popcount(x & z)) % 4 + 4) % 4;
    const double sign = (dy == 2) ? -1.0 : 1.0;
    out.terms.push_back(PauliTerm{x, z, sign * t.coefficient});
  }
  canonicalize(out);
  return out;
}

}  // namespace

QubitHamiltonian jordan_wigner(const SpinOrbitalIntegrals& s) {
  const int n = s.n_spin_orbitals;
  if (n > 32) throw CapacityError("more than 32 spin orbitals");

  TermMap acc;
  acc.reserve(1024);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double w = s.h_at(p, q);
      if (w == 0.0) continue;
      for (const auto& tp : ladder(p, true))
        for (const auto& tq : ladder(q, false)) {
          RawTerm t = mul(tp, tq);
          t.c *= w;
          add(acc, t);
        }
    }
  // (1/2) sum <pq|rs> a_p^dag a_q^dag a_s a_r
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      for (int r = 0; r < n; ++r)
        for (int s_ = 0; s_ < n; ++s_) {
          if (s_ == r) continue;
          const double w = s.g_at(p, q, r, s_);
          if (w == 0.0) continue;
          for (const auto& tp : ladder(p, true))
            for (const auto& tq : ladder(q, true))
              for (const auto& ts : ladder(s_, false))
                for (const auto& tr : ladder(r, false)) {
                  RawTerm t = mul(mul(tp, tq), mul(ts, tr));
                  t.c *= 0.5 * w;
                  add(acc, t);
                }
        }
    }
  return collect(acc, n, s.core_energy);
}

QubitHamiltonian parity_transform(const QubitHamiltonian& h) {
  return ladder_conjugate(h, false);
}

QubitHamiltonian parity_transform_inverse(const QubitHamiltonian& h) {
  return ladder_conjugate(h, true);
}

QubitHamiltonian taper_two_qubits(const QubitHamiltonian& parity_h,
                                  int n_alpha, int n_beta) {
  const int n = parity_h.n_qubits;
  if (n < 4 || n % 2 != 0)
    throw CapacityError("tapering needs an even qubit count of at least 4");
  const int l = n / 2;
  const int qa = l - 1;       // alpha parity
  const int qt = 2 * l - 1;   // total parity
  const double sign_a = (n_alpha % 2) ? -1.0 : 1.0;
  const double sign_t = ((n_alpha + n_beta) % 2) ? -1.0 : 1.0;

  const auto drop = [qa, qt](std::uint64_t m) {
    const std::uint64_t low = m & ((1ull << qa) - 1);
    const std::uint64_t mid = (m >> (qa + 1)) & ((1ull << (qt - qa - 1)) - 1);
    return low | (mid << qa);
  };

  QubitHamiltonian out;
  out.n_qubits = n - 2;
  out.identity_coefficient = parity_h.identity_coefficient;
  out.terms.reserve(parity_h.terms.size());
  for (const auto& t : parity_h.terms) {
    if (((t.x_mask >> qa) & 1) || ((t.x_mask >> qt) & 1))
      throw SymmetryError("X or Y on a parity qubit: Hamiltonian does not "
                          "conserve the tapering symmetries");
    double c = t.coefficient;
    if ((t.z_mask >> qa) & 1) c *= sign_a;
    if ((t.z_mask >> qt) & 1) c *= sign_t;
    out.terms.push_back(PauliTerm{drop(t.x_mask), drop(t.z_mask), c});
  }
  canonicalize(out);
  return out;
}

QubitHamiltonian encode_hamiltonian(const SpinOrbitalIntegrals& s,
                                    EncodingKind kind) {
  QubitHamiltonian h = jordan_wigner(s);
  if (kind == EncodingKind::Jw) return h;
  h = parity_transform(h);
  if (kind == EncodingKind::Parity) return h;
  return taper_two_qubits(h, s.n_alpha, s.n_beta);
}

}  // namespace qpesim
