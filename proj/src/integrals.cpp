#include "qpesim/integrals.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

constexpr int kMaxOrbitals = 16;
constexpr double kDuplicateTol = 1e-10;

std::size_t sq(int n, int p, int q) {
  return static_cast<std::size_t>(p) * n + q;
}

std::size_t quad(int n, int p, int q, int r, int s) {
  return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
}

// Pulls an integer value for `key` out of a normalized "KEY=VALUE,..." blob.
int header_int(const std::string& header, const std::string& key) {
  const auto pos = header.find(key + "=");
  if (pos != 0 && (pos == std::string::npos ||
                   std::isalnum(static_cast<unsigned char>(header[pos - 1])))) {
    throw ParseError("FCIDUMP header missing " + key);
  }
  const char* p = header.c_str() + pos + key.size() + 1;
  char* end = nullptr;
  const long v = std::strtol(p, &end, 10);
  if (end == p) throw ParseError("FCIDUMP header has no value for " + key);
  return static_cast<int>(v);
}

}  // namespace

double& SpatialIntegrals::h_at(int p, int q) { return h[sq(n_orbitals, p, q)]; }
double SpatialIntegrals::h_at(int p, int q) const { return h[sq(n_orbitals, p, q)]; }
double& SpatialIntegrals::g_at(int p, int q, int r, int s) {
  return g[quad(n_orbitals, p, q, r, s)];
}
double SpatialIntegrals::g_at(int p, int q, int r, int s) const {
  return g[quad(n_orbitals, p, q, r, s)];
}

double SpinOrbitalIntegrals::h_at(int p, int q) const {
  return h_so[sq(n_spin_orbitals, p, q)];
}
double SpinOrbitalIntegrals::g_at(int p, int q, int r, int s) const {
  return g_so[quad(n_spin_orbitals, p, q, r, s)];
}

SpatialIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  bool header_done = false;
  while (std::getline(in, line)) {
    header += " " + line;
    const auto t = line.find_first_not_of(" \t");
    if (line.find("&END") != std::string::npos ||
        (t != std::string::npos && line[t] == '/')) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("FCIDUMP header not terminated by &END or /");

  // Normalize so values can be read as KEY=INT regardless of spacing.
  std::string norm;
  norm.reserve(header.size());
  for (char c : header) {
    if (c == ' ' || c == '\t') {
      if (!norm.empty() && norm.back() == '=') continue;
      norm.push_back(' ');
    } else {
      if (c == '=' && !norm.empty() && norm.back() == ' ') norm.pop_back();
      norm.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }

  SpatialIntegrals out;
  out.n_orbitals = header_int(norm, "NORB");
  out.n_electrons = header_int(norm, "NELEC");
  out.ms2 = header_int(norm, "MS2");
  if (out.n_orbitals <= 0) throw ParseError("NORB must be positive");
  if (out.n_orbitals > kMaxOrbitals)
    throw CapacityError("NORB exceeds the supported maximum of 16");
  if (out.n_electrons < 0 || out.n_electrons > 2 * out.n_orbitals)
    throw ParseError("NELEC out of range for NORB");

  const int l = out.n_orbitals;
  out.h.assign(static_cast<std::size_t>(l) * l, 0.0);
  out.g.assign(static_cast<std::size_t>(l) * l * l * l, 0.0);
  std::vector<bool> h_set(out.h.size(), false);
  std::vector<bool> g_set(out.g.size(), false);

  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    double v;
    int i, j, k, m;
    if (!(is >> v >> i >> j >> k >> m))
      throw ParseError("malformed FCIDUMP record at data line " +
                       std::to_string(lineno));
    for (int idx : {i, j, k, m})
      if (idx < 0 || idx > l)
        throw IndexError("orbital index out of range at data line " +
                         std::to_string(lineno));
    if (i == 0 && j == 0 && k == 0 && m == 0) {
      out.core_energy = v;
    } else if (k == 0 && m == 0) {
      if (i == 0 || j == 0)
        throw ParseError("one-electron record with zero index at data line " +
                         std::to_string(lineno));
      const int p = i - 1, q = j - 1;
      for (auto [a, b] : std::array<std::array<int, 2>, 2>{{{p, q}, {q, p}}}) {
        auto& slot = out.h[sq(l, a, b)];
        if (h_set[sq(l, a, b)] && std::abs(slot - v) > kDuplicateTol)
          throw ConsistencyError("conflicting duplicate h entry at data line " +
                                 std::to_string(lineno));
        slot = v;
        h_set[sq(l, a, b)] = true;
      }
    } else {
      if (i == 0 || j == 0 || k == 0 || m == 0)
        throw ParseError("two-electron record with zero index at data line " +
                         std::to_string(lineno));
      const int p = i - 1, q = j - 1, r = k - 1, s = m - 1;
      // 8-fold symmetry of real-orbital (pq|rs).
      const std::array<std::array<int, 4>, 8> images{{{p, q, r, s},
                                                      {q, p, r, s},
                                                      {p, q, s, r},
                                                      {q, p, s, r},
                                                      {r, s, p, q},
                                                      {s, r, p, q},
                                                      {r, s, q, p},
                                                      {s, r, q, p}}};
      for (const auto& im : images) {
        const auto off = quad(l, im[0], im[1], im[2], im[3]);
        if (g_set[off] && std::abs(out.g[off] - v) > kDuplicateTol)
          throw ConsistencyError("conflicting duplicate g entry at data line " +
                                 std::to_string(lineno));
        out.g[off] = v;
        g_set[off] = true;
      }
    }
  }
  return out;
}

SpatialIntegrals parse_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

SpinOrbitalIntegrals to_spin_orbitals(const SpatialIntegrals& s, int n_alpha,
                                      int n_beta) {
  const int l = s.n_orbitals;
  const int n = 2 * l;
  if (n_alpha + n_beta != s.n_electrons)
    throw ConsistencyError("n_alpha + n_beta does not match NELEC");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > l || n_beta > l)
    throw CapacityError("electron count does not fit the spin-orbital space");

  SpinOrbitalIntegrals out;
  out.n_spin_orbitals = n;
  out.n_alpha = n_alpha;
  out.n_beta = n_beta;
  out.core_energy = s.core_energy;
  out.h_so.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.g_so.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);

  const auto spin = [l](int p) { return p >= l; };
  const auto spatial = [l](int p) { return p % l; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (spin(p) == spin(q))
        out.h_so[sq(n, p, q)] = s.h_at(spatial(p), spatial(q));
  // <pq|rs> = (PR|QS) with matching spins on (p,r) and (q,s).
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        if (spin(p) != spin(r)) continue;
        for (int s_ = 0; s_ < n; ++s_) {
          if (spin(q) != spin(s_)) continue;
          out.g_so[quad(n, p, q, r, s_)] =
              s.g_at(spatial(p), spatial(r), spatial(q), spatial(s_));
        }
      }
  return out;
}

SpatialIntegrals rotate_integrals(const SpatialIntegrals& s,
                                  const OrbitalRotation& v) {
  const int l = s.n_orbitals;
  if (v.n != l) throw RotationError("rotation dimension mismatch");
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      double dot = 0.0;
      for (int k = 0; k < l; ++k) dot += v.at(k, i) * v.at(k, j);
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw RotationError("rotation matrix is not orthogonal");
    }

  SpatialIntegrals out = s;
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q) {
      double acc = 0.0;
      for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) acc += v.at(a, p) * s.h_at(a, b) * v.at(b, q);
      out.h[sq(l, p, q)] = acc;
    }

  // Four-index transform, one index per pass.
  std::vector<double> t1(s.g.size()), t2(s.g.size());
  const auto& g0 = s.g;
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      for (int c = 0; c < l; ++c)
        for (int q = 0; q < l; ++q) {
          double acc = 0.0;
          for (int d = 0; d < l; ++d) acc += g0[quad(l, a, b, c, d)] * v.at(d, q);
          t1[quad(l, a, b, c, q)] = acc;
        }
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      for (int p = 0; p < l; ++p)
        for (int q = 0; q < l; ++q) {
          double acc = 0.0;
          for (int c = 0; c < l; ++c) acc += t1[quad(l, a, b, c, q)] * v.at(c, p);
          t2[quad(l, a, b, p, q)] = acc;
        }
  for (int a = 0; a < l; ++a)
    for (int n_ = 0; n_ < l; ++n_)
      for (int p = 0; p < l; ++p)
        for (int q = 0; q < l; ++q) {
          double acc = 0.0;
          for (int b = 0; b < l; ++b) acc += t2[quad(l, a, b, p, q)] * v.at(b, n_);
          t1[quad(l, a, n_, p, q)] = acc;
        }
  for (int m = 0; m < l; ++m)
    for (int n_ = 0; n_ < l; ++n_)
      for (int p = 0; p < l; ++p)
        for (int q = 0; q < l; ++q) {
          double acc = 0.0;
          for (int a = 0; a < l; ++a) acc += t1[quad(l, a, n_, p, q)] * v.at(a, m);
          out.g[quad(l, m, n_, p, q)] = acc;
        }
  return out;
}

}  // namespace qpesim
