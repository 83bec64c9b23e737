#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qpesim/errors.hpp"
#include "qpesim/integrals.hpp"
#include "qpesim/oracle.hpp"

using namespace qpesim;

namespace {
const std::string kFixtures = QPESIM_FIXTURE_DIR;

nlohmann::json fixture_meta(const std::string& stem) {
  std::ifstream in(kFixtures + "/" + stem + ".json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}
}  // namespace

TEST_CASE("fcidump header and core energy parse") {
  std::istringstream in(
      "&FCI NORB=2,NELEC=2,MS2=0,\n"
      " ORBSYM=1,1,\n"
      " ISYM=1,\n"
      "&END\n"
      "  0.5  1 1 1 1\n"
      " -1.25  1 1 0 0\n"
      "  0.7  0 0 0 0\n");
  const auto s = parse_fcidump(in);
  CHECK(s.n_orbitals == 2);
  CHECK(s.n_electrons == 2);
  CHECK(s.ms2 == 0);
  CHECK(s.core_energy == doctest::Approx(0.7));
  CHECK(s.h_at(0, 0) == doctest::Approx(-1.25));
  CHECK(s.g_at(0, 0, 0, 0) == doctest::Approx(0.5));
}

TEST_CASE("fcidump applies eightfold symmetry expansion") {
  std::istringstream in(
      "&FCI NORB=3,NELEC=2,MS2=0,\n"
      "&END\n"
      "  0.25  2 1 3 1\n");
  const auto s = parse_fcidump(in);
  // (21|31) fills all eight symmetry partners
  CHECK(s.g_at(1, 0, 2, 0) == doctest::Approx(0.25));
  CHECK(s.g_at(0, 1, 2, 0) == doctest::Approx(0.25));
  CHECK(s.g_at(1, 0, 0, 2) == doctest::Approx(0.25));
  CHECK(s.g_at(0, 1, 0, 2) == doctest::Approx(0.25));
  CHECK(s.g_at(2, 0, 1, 0) == doctest::Approx(0.25));
  CHECK(s.g_at(0, 2, 1, 0) == doctest::Approx(0.25));
  CHECK(s.g_at(2, 0, 0, 1) == doctest::Approx(0.25));
  CHECK(s.g_at(0, 2, 0, 1) == doctest::Approx(0.25));
}

TEST_CASE("malformed fcidump raises") {
  std::istringstream no_header("0.5 1 1 1 1\n");
  CHECK_THROWS_AS(parse_fcidump(no_header), ParseError);
  std::istringstream bad_index(
      "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 0.5 9 1 1 1\n");
  CHECK_THROWS_AS(parse_fcidump(bad_index), IndexError);
}

TEST_CASE("every fixture parses with expected sizes") {
  const struct {
    const char* stem;
    int norb;
  } cases[] = {{"h4_sto3g", 4}, {"h8_sto3g_cmo", 8}, {"h8_sto3g_lmo", 8}};
  for (const auto& c : cases) {
    const auto s = parse_fcidump_file(kFixtures + "/" + c.stem + ".fcidump");
    CHECK(s.n_orbitals == c.norb);
    CHECK(s.n_electrons == c.norb);
    CHECK(s.ms2 == 0);
    const auto meta = fixture_meta(c.stem);
    CHECK(s.core_energy ==
          doctest::Approx(meta["e_nuclear"].get<double>()).epsilon(1e-12));
    // stored integrals are fully symmetrized
    for (int p = 0; p < s.n_orbitals; ++p)
      for (int q = 0; q < s.n_orbitals; ++q)
        CHECK(s.h_at(p, q) == doctest::Approx(s.h_at(q, p)).epsilon(1e-14));
  }
}

TEST_CASE("spin-orbital expansion keeps spin sectors separate") {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  const auto so = to_spin_orbitals(s, 2, 2);
  const int l = s.n_orbitals;
  CHECK(so.n_spin_orbitals == 2 * l);
  // one-body: block diagonal in spin, equal blocks
  CHECK(so.h_at(0, 1) == doctest::Approx(s.h_at(0, 1)));
  CHECK(so.h_at(l, l + 1) == doctest::Approx(s.h_at(0, 1)));
  CHECK(so.h_at(0, l + 1) == 0.0);
  // two-body physicist <pq|rs> = (pr|qs) when spins match pairwise
  CHECK(so.g_at(0, 1, 2, 3) == doctest::Approx(s.g_at(0, 2, 1, 3)));
  CHECK(so.g_at(0, l + 1, 2, l + 3) == doctest::Approx(s.g_at(0, 2, 1, 3)));
  // spin-flip on one index kills the element
  CHECK(so.g_at(0, 1, l + 2, 3) == 0.0);
}

TEST_CASE("rotate_integrals identity is exact") {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  OrbitalRotation v;
  v.n = s.n_orbitals;
  v.v.assign(static_cast<std::size_t>(v.n) * v.n, 0.0);
  for (int i = 0; i < v.n; ++i) v.v[static_cast<std::size_t>(i) * v.n + i] = 1.0;
  const auto r = rotate_integrals(s, v);
  for (std::size_t i = 0; i < s.h.size(); ++i)
    CHECK(r.h[i] == doctest::Approx(s.h[i]).epsilon(1e-15));
  for (std::size_t i = 0; i < s.g.size(); ++i)
    CHECK(r.g[i] == doctest::Approx(s.g[i]).epsilon(1e-15));
  CHECK(r.core_energy == s.core_energy);
}

TEST_CASE("rotate_integrals permutation swaps orbital labels") {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  OrbitalRotation v;
  v.n = s.n_orbitals;
  v.v.assign(static_cast<std::size_t>(v.n) * v.n, 0.0);
  const auto set = [&](int r, int c) {
    v.v[static_cast<std::size_t>(r) * v.n + c] = 1.0;
  };
  set(0, 1);
  set(1, 0);
  set(2, 2);
  set(3, 3);
  const auto r = rotate_integrals(s, v);
  const auto relabel = [](int p) { return p < 2 ? 1 - p : p; };
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      CHECK(r.h_at(p, q) ==
            doctest::Approx(s.h_at(relabel(p), relabel(q))).epsilon(1e-13));
}

TEST_CASE("rotate_integrals rejects a non-orthogonal matrix") {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  OrbitalRotation v;
  v.n = s.n_orbitals;
  v.v.assign(static_cast<std::size_t>(v.n) * v.n, 0.1);
  CHECK_THROWS_AS(rotate_integrals(s, v), RotationError);
}

TEST_CASE("rotation round-trip returns the original integrals") {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  // random orthogonal via Gram-Schmidt on a seeded random matrix
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  const int n = s.n_orbitals;
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& x : c) x = gauss(rng);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double dot = 0;
      for (int k = 0; k < n; ++k) dot += cols[i][k] * cols[j][k];
      for (int k = 0; k < n; ++k) cols[i][k] -= dot * cols[j][k];
    }
    double nrm = 0;
    for (int k = 0; k < n; ++k) nrm += cols[i][k] * cols[i][k];
    nrm = std::sqrt(nrm);
    for (int k = 0; k < n; ++k) cols[i][k] /= nrm;
  }
  OrbitalRotation v, vt;
  v.n = vt.n = n;
  v.v.resize(static_cast<std::size_t>(n) * n);
  vt.v.resize(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      v.v[static_cast<std::size_t>(r) * n + c] = cols[c][r];
      vt.v[static_cast<std::size_t>(c) * n + r] = cols[c][r];
    }

  const auto once = rotate_integrals(s, v);
  const auto back = rotate_integrals(once, vt);
  for (std::size_t i = 0; i < s.h.size(); ++i)
    CHECK(back.h[i] == doctest::Approx(s.h[i]).epsilon(1e-10));
  for (std::size_t i = 0; i < s.g.size(); ++i)
    CHECK(back.g[i] == doctest::Approx(s.g[i]).epsilon(1e-10));

  // full-CI energy is invariant under the rotation
  const auto e0 = make_encoded_system(s, EncodingKind::Jw).spectrum.ground_energy;
  const auto e1 =
      make_encoded_system(once, EncodingKind::Jw).spectrum.ground_energy;
  CHECK(e1 == doctest::Approx(e0).epsilon(1e-9));
}

TEST_CASE("lmo fixture equals cmo fixture rotated by the recorded matrix") {
  const auto cmo = parse_fcidump_file(kFixtures + "/h8_sto3g_cmo.fcidump");
  const auto lmo = parse_fcidump_file(kFixtures + "/h8_sto3g_lmo.fcidump");
  const auto meta = fixture_meta("h8_sto3g_lmo");
  const auto rows = meta["rotation_from_cmo"];
  OrbitalRotation v;
  v.n = cmo.n_orbitals;
  v.v.resize(static_cast<std::size_t>(v.n) * v.n);
  for (int r = 0; r < v.n; ++r)
    for (int c = 0; c < v.n; ++c)
      v.v[static_cast<std::size_t>(r) * v.n + c] = rows[r][c].get<double>();
  const auto rotated = rotate_integrals(cmo, v);
  double max_h = 0, max_g = 0;
  for (std::size_t i = 0; i < lmo.h.size(); ++i)
    max_h = std::max(max_h, std::abs(rotated.h[i] - lmo.h[i]));
  for (std::size_t i = 0; i < lmo.g.size(); ++i)
    max_g = std::max(max_g, std::abs(rotated.g[i] - lmo.g[i]));
  // fixtures round-trip through fcidump text, so only ask for file precision
  CHECK(max_h < 5e-9);
  CHECK(max_g < 5e-9);
}
