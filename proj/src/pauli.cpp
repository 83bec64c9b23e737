#include "qpesim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace qpesim {

char pauli_letter(const PauliTerm& term, int qubit) {
  const bool x = (term.x_mask >> qubit) & 1;
  const bool z = (term.z_mask >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string pauli_string(const PauliTerm& term, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) s[q] = pauli_letter(term, q);
  return s;
}

std::uint64_t lexicographic_rank(const PauliTerm& term, int n_qubits) {
  // 2-bit codes I=0, X=1, Y=2, Z=3; qubit 0 occupies the top bit pair.
  std::uint64_t rank = 0;
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t x = (term.x_mask >> q) & 1;
    const std::uint64_t z = (term.z_mask >> q) & 1;
    const std::uint64_t code = x ? (z ? 2 : 1) : (z ? 3 : 0);
    rank |= code << (2 * (31 - q));
  }
  return rank;
}

std::complex<double> product_phase(std::uint64_t x1, std::uint64_t z1,
                                   std::uint64_t x2, std::uint64_t z2) {
  // With N(x,z) = i^{|x&z|} X^x Z^z equal to the letter tensor, the product
  // N1*N2 = i^{p1+p2-p3} * (-1)^{|z1&x2|} * N(x1^x2, z1^z2).
  const int p1 = std::popcount(x1 & z1);
  const int p2 = std::popcount(x2 & z2);
  const int p3 = std::popcount((x1 ^ x2) & (z1 ^ z2));
  int k = ((p1 + p2 - p3) % 4 + 4) % 4;
  if (std::popcount(z1 & x2) & 1) k = (k + 2) % 4;
  static const std::complex<double> table[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k];
}

void canonicalize(QubitHamiltonian& h, double prune_threshold) {
  std::vector<PauliTerm> merged;
  merged.reserve(h.terms.size());
  std::sort(h.terms.begin(), h.terms.end(), [](const auto& a, const auto& b) {
    return std::tie(a.x_mask, a.z_mask) < std::tie(b.x_mask, b.z_mask);
  });
  for (const auto& t : h.terms) {
    if (!merged.empty() && merged.back().x_mask == t.x_mask &&
        merged.back().z_mask == t.z_mask) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  h.terms.clear();
  for (const auto& t : merged) {
    if (t.x_mask == 0 && t.z_mask == 0) {
      h.identity_coefficient += t.coefficient;
    } else if (std::abs(t.coefficient) >= prune_threshold) {
      h.terms.push_back(t);
    }
  }
  const int n = h.n_qubits;
  std::sort(h.terms.begin(), h.terms.end(), [n](const auto& a, const auto& b) {
    return lexicographic_rank(a, n) < lexicographic_rank(b, n);
  });
}

QubitHamiltonian order_terms(const QubitHamiltonian& h, Ordering strategy) {
  QubitHamiltonian out = h;
  const int n = h.n_qubits;
  if (strategy == Ordering::Lexicographic) {
    std::sort(out.terms.begin(), out.terms.end(),
              [n](const auto& a, const auto& b) {
                return lexicographic_rank(a, n) < lexicographic_rank(b, n);
              });
  } else {
    std::sort(out.terms.begin(), out.terms.end(),
              [n](const auto& a, const auto& b) {
                const double ma = std::abs(a.coefficient);
                const double mb = std::abs(b.coefficient);
                if (ma != mb) return ma > mb;
                return lexicographic_rank(a, n) < lexicographic_rank(b, n);
              });
  }
  return out;
}

std::string to_text(const QubitHamiltonian& h) {
  std::string out;
  char buf[64];
  const auto line = [&](double w, const std::string& p) {
    std::snprintf(buf, sizeof(buf), "%+.12f  ", w);
    out += buf;
    out += p;
    out += '\n';
  };
  line(h.identity_coefficient,
       std::string(static_cast<std::size_t>(h.n_qubits), 'I'));
  for (const auto& t : h.terms) line(t.coefficient, pauli_string(t, h.n_qubits));
  return out;
}

}  // namespace qpesim
