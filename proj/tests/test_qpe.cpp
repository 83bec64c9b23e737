#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "qpesim/errors.hpp"
#include "qpesim/integrals.hpp"
#include "qpesim/qpe.hpp"
#include "support/dense.hpp"

using namespace qpesim;
using testsup::CMat;
using testsup::CVec;

namespace {
const std::string kFixtures = QPESIM_FIXTURE_DIR;

// two-orbital truncation of the monomer: 4 qubits under JW
SpatialIntegrals reduced_monomer() {
  const auto s = parse_fcidump_file(kFixtures + "/h4_sto3g.fcidump");
  SpatialIntegrals small;
  small.n_orbitals = 2;
  small.n_electrons = 2;
  small.ms2 = 0;
  small.core_energy = s.core_energy;
  small.h.resize(4);
  small.g.resize(16);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) small.h_at(p, q) = s.h_at(p, q);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int t = 0; t < 2; ++t)
          small.g_at(p, q, r, t) = s.g_at(p, q, r, t);
  return small;
}

// one-level system with an exactly grid-aligned eigenphase
EncodedSystem phase_lattice_system(double phi0) {
  EncodedSystem sys;
  sys.kind = EncodingKind::Jw;
  sys.l = 1;
  sys.n_alpha = 1;
  sys.n_beta = 0;
  sys.h.n_qubits = 2;
  sys.h.identity_coefficient = -2.0 * std::numbers::pi * phi0;
  sys.sector = make_sector_basis(1, 1, 0);
  sys.spectrum.eigenvalues = Eigen::VectorXd::Constant(1, sys.h.identity_coefficient);
  sys.spectrum.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
  sys.spectrum.ground_energy = sys.h.identity_coefficient;
  return sys;
}

double max_bin_diff(const PhaseDistribution& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    d = std::max(d, std::abs(a.probabilities[i] - b[i]));
  return d;
}
}  // namespace

TEST_CASE("trotterized evolution matches the dense matrix product") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (const auto ordering : {Ordering::Magnitude, Ordering::Lexicographic}) {
    const auto ordered = order_terms(sys.h, ordering);
    for (const auto order : {TrotterOrder::First, TrotterOrder::Second}) {
      for (const int slices : {1, 3}) {
        TrotterPlan plan{order, slices, 0.37, ordering};
        std::vector<std::complex<double>> amp(16);
        double nrm = 0.0;
        for (auto& a : amp) {
          a = {g(rng), g(rng)};
          nrm += std::norm(a);
        }
        for (auto& a : amp) a /= std::sqrt(nrm);
        Statevector psi(4, amp);
        const CMat u = testsup::trotter_matrix(ordered, order, slices, 0.37);
        const CVec expect = u * testsup::to_eigen(psi);
        apply_trotterized_evolution(psi, ordered, plan, std::nullopt, 1);
        double d = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
          d = std::max(d,
                       std::abs(psi[i] - expect(static_cast<Eigen::Index>(i))));
        CHECK(d < 1e-12);
      }
    }
  }
}

TEST_CASE("higher powers repeat the whole slice product") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  const auto ordered = order_terms(sys.h, Ordering::Magnitude);
  TrotterPlan plan{TrotterOrder::First, 2, 0.2, Ordering::Magnitude};
  auto psi = prepare_input_state(sys, InputKind::HartreeFock);
  const CMat u = testsup::trotter_matrix(ordered, TrotterOrder::First, 2, 0.2);
  const CVec expect = u * u * u * testsup::to_eigen(psi);
  apply_trotterized_evolution(psi, ordered, plan, std::nullopt, 3);
  double d = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    d = std::max(d, std::abs(psi[i] - expect(static_cast<Eigen::Index>(i))));
  CHECK(d < 1e-12);
}

TEST_CASE("controlled evolution matches the dense controlled matrix") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  const auto ordered = order_terms(sys.h, Ordering::Lexicographic);
  TrotterPlan plan{TrotterOrder::Second, 2, 0.5, Ordering::Lexicographic};

  auto psi = prepare_input_state(sys, InputKind::FullCI);
  psi.extend_with_zero_qubit();
  psi.apply_hadamard(4);
  const CMat u = testsup::trotter_matrix(ordered, TrotterOrder::Second, 2, 0.5);
  const CVec expect =
      testsup::controlled_matrix(u * u, 4) * testsup::to_eigen(psi);
  apply_trotterized_evolution(psi, ordered, plan, 4, 2);
  double d = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    d = std::max(d, std::abs(psi[i] - expect(static_cast<Eigen::Index>(i))));
  CHECK(d < 1e-12);
}

TEST_CASE("evolution rejects a non-positive slice count") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  auto psi = prepare_input_state(sys, InputKind::HartreeFock);
  TrotterPlan plan;
  plan.slices = 0;
  CHECK_THROWS_AS(
      apply_trotterized_evolution(psi, sys.h, plan, std::nullopt, 1),
      ConsistencyError);
}

TEST_CASE("input state preparation") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  const auto hf = prepare_input_state(sys, InputKind::HartreeFock);
  // lowest alpha + lowest beta orbital occupied: index 0b0101
  for (std::size_t i = 0; i < hf.size(); ++i)
    CHECK(std::abs(hf[i]) == doctest::Approx(i == 0b0101 ? 1.0 : 0.0));

  const auto ci = prepare_input_state(sys, InputKind::FullCI);
  const auto e = expectation_value(ci, sys.h);
  CHECK(e.real() ==
        doctest::Approx(sys.spectrum.ground_energy).epsilon(1e-12));

  auto degenerate = sys;
  degenerate.spectrum.eigenvalues = Eigen::VectorXd::Constant(2, -1.0);
  CHECK_THROWS_AS(prepare_input_state(degenerate, InputKind::FullCI),
                  DegeneracyError);
}

TEST_CASE("naive and sequential schedules give identical distributions") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  for (const auto input : {InputKind::HartreeFock, InputKind::FullCI}) {
    QpeConfig cfg;
    cfg.n_ancilla = 4;
    cfg.input_state = input;
    cfg.plan = {TrotterOrder::First, 2, 1.0, Ordering::Magnitude};
    const auto a = run_qpe_naive(sys, cfg);
    const auto b = run_qpe_sequential(sys, cfg);
    REQUIRE(a.probabilities.size() == b.probabilities.size());
    CHECK(max_bin_diff(a, b.probabilities) < 1e-13);
  }
}

TEST_CASE("qpe circuit matches the dense textbook reference") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  QpeConfig cfg;
  cfg.n_ancilla = 3;
  cfg.input_state = InputKind::FullCI;
  cfg.plan = {TrotterOrder::Second, 2, 1.0, Ordering::Magnitude};
  const auto got = run_qpe_naive(sys, cfg);

  const auto ordered = order_terms(sys.h, Ordering::Magnitude);
  const CMat u = testsup::trotter_matrix(ordered, TrotterOrder::Second, 2, 1.0);
  const CVec in = testsup::to_eigen(prepare_input_state(sys, InputKind::FullCI));
  const auto ref = testsup::qpe_reference(u, in, 3);
  REQUIRE(got.probabilities.size() == ref.size());
  CHECK(max_bin_diff(got, ref) < 1e-11);
}

TEST_CASE("trotter-free distribution equals dense qpe on the exact propagator") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  const CMat u =
      testsup::evolution_matrix(testsup::hamiltonian_matrix(sys.h), 1.0);
  for (const auto input : {InputKind::FullCI, InputKind::HartreeFock}) {
    const auto got = trotter_free_distribution(sys, 4, input, 1.0);
    const CVec in = testsup::to_eigen(prepare_input_state(sys, input));
    const auto ref = testsup::qpe_reference(u, in, 4);
    CHECK(max_bin_diff(got, ref) < 1e-11);
    CHECK(std::accumulate(got.probabilities.begin(), got.probabilities.end(),
                          0.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("grid-aligned eigenphase reads out exactly") {
  const auto sys = phase_lattice_system(3.0 / 8.0);
  QpeConfig cfg;
  cfg.n_ancilla = 3;
  cfg.input_state = InputKind::FullCI;
  for (const auto* label : {"naive", "sequential"}) {
    const auto dist = label[0] == 'n' ? run_qpe_naive(sys, cfg)
                                      : run_qpe_sequential(sys, cfg);
    CHECK(dist.probabilities[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist.phase_of(3) == doctest::Approx(0.375));
  }
  const auto tf = trotter_free_distribution(sys, 3, InputKind::FullCI, 1.0);
  CHECK(tf.probabilities[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qpe guards") {
  const auto sys = make_encoded_system(reduced_monomer(), EncodingKind::Jw);
  QpeConfig cfg;
  cfg.n_ancilla = 0;
  CHECK_THROWS_AS(run_qpe_naive(sys, cfg), ConsistencyError);
  CHECK_THROWS_AS(run_qpe_sequential(sys, cfg), ConsistencyError);

  cfg.n_ancilla = 27;  // 4 system + 27 ancilla > 30
  CHECK_THROWS_AS(run_qpe_naive(sys, cfg), CapacityError);

  cfg.n_ancilla = 4;
  // pick t so E0 t < -2 pi: the phase wraps off the principal branch
  const double t_wrap = -7.0 / sys.spectrum.ground_energy;
  cfg.plan.time = t_wrap;
  CHECK_THROWS_AS(run_qpe_naive(sys, cfg), ConsistencyError);
  CHECK_THROWS_AS(trotter_free_distribution(sys, 4, InputKind::FullCI, t_wrap),
                  ConsistencyError);
  CHECK_THROWS_AS(trotter_free_distribution(sys, 0, InputKind::FullCI, 1.0),
                  CapacityError);
}

TEST_CASE("sampling is deterministic and conserves shots") {
  PhaseDistribution dist;
  dist.n_ancilla = 2;
  dist.probabilities = {0.1, 0.2, 0.3, 0.4};
  const auto a = sample_counts(dist, 10000, 42);
  const auto b = sample_counts(dist, 10000, 42);
  CHECK(a == b);
  CHECK(std::accumulate(a.begin(), a.end(), std::uint64_t{0}) == 10000);
  const auto c = sample_counts(dist, 10000, 43);
  CHECK(a != c);

  PhaseDistribution point;
  point.n_ancilla = 1;
  point.probabilities = {0.0, 1.0};
  const auto d = sample_counts(point, 500, 7);
  CHECK(d[0] == 0);
  CHECK(d[1] == 500);
}

TEST_CASE("distribution csv schema") {
  PhaseDistribution dist;
  dist.n_ancilla = 1;
  dist.probabilities = {0.25, 0.75};
  std::ostringstream os;
  write_distribution_csv(os, dist);
  CHECK(os.str() == "bin,phase,probability\n0,0,0.25\n1,0.5,0.75\n");
}
