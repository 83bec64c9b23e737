#include "qpesim/qpe.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

constexpr double kPi = std::numbers::pi;

void check_plan(const TrotterPlan& plan) {
  if (plan.slices < 1) throw ConsistencyError("Trotter slice count must be >= 1");
}

// phi = -E t / 2pi must land in [0, 1) without wrapping for the ground
// state, otherwise measured phases are ambiguous.
void check_branch(double ground_energy, double time) {
  const double et = ground_energy * time;
  if (!(et > -2.0 * kPi && et <= 0.0))
    throw ConsistencyError("ground-state phase leaves the principal branch; "
                           "adjust the evolution time");
}

void check_capacity(int total_qubits) {
  if (total_qubits > 30)
    throw CapacityError("system plus ancilla register exceeds capacity");
}

std::vector<int> ancilla_list(int l_qubits, int n_ancilla) {
  std::vector<int> qubits(n_ancilla);
  for (int k = 0; k < n_ancilla; ++k) qubits[k] = l_qubits + k;
  return qubits;
}

PhaseDistribution finish_readout(Statevector& psi, int l_qubits,
                                 int n_ancilla) {
  const std::vector<int> anc = ancilla_list(l_qubits, n_ancilla);
  psi.inverse_qft(anc);
  PhaseDistribution dist;
  dist.n_ancilla = n_ancilla;
  dist.probabilities = psi.marginal_distribution(anc);
  return dist;
}

}  // namespace

void apply_trotterized_evolution(Statevector& psi, const QubitHamiltonian& h,
                                 const TrotterPlan& plan,
                                 std::optional<int> control,
                                 std::uint64_t repetitions) {
  check_plan(plan);
  const double step = plan.time / plan.slices;
  const auto rotate = [&](const PauliTerm& t, double theta) {
    if (control)
      psi.apply_controlled_pauli_rotation(*control, t, theta);
    else
      psi.apply_pauli_rotation(t, theta);
  };
  const std::uint64_t total_slices =
      repetitions * static_cast<std::uint64_t>(plan.slices);
  for (std::uint64_t s = 0; s < total_slices; ++s) {
    if (plan.order == TrotterOrder::First) {
      for (const auto& t : h.terms) rotate(t, t.coefficient * step);
    } else {
      for (const auto& t : h.terms) rotate(t, 0.5 * t.coefficient * step);
      for (auto it = h.terms.rbegin(); it != h.terms.rend(); ++it)
        rotate(*it, 0.5 * it->coefficient * step);
    }
  }
  const double phi = -h.identity_coefficient * plan.time *
                     static_cast<double>(repetitions);
  if (control)
    psi.apply_controlled_phase(*control, phi);
  else
    psi.apply_phase(phi);
}

Statevector prepare_input_state(const EncodedSystem& sys, InputKind kind) {
  if (kind == InputKind::HartreeFock) {
    const std::uint64_t occ =
        hartree_fock_occupations(sys.l, sys.n_alpha, sys.n_beta);
    const std::uint64_t q = determinant_to_qubit_index(
        occ, sys.kind, sys.l, sys.n_alpha, sys.n_beta);
    Statevector psi(sys.n_system_qubits());
    psi[0] = 0.0;
    psi[q] = 1.0;
    return psi;
  }
  if (sys.spectrum.eigenvalues.size() > 1 &&
      sys.spectrum.eigenvalues(1) - sys.spectrum.eigenvalues(0) < 1e-10)
    throw DegeneracyError("degenerate ground state: full-CI input undefined");
  return sector_vector_to_state(sys, sys.spectrum.eigenvectors.col(0));
}

PhaseDistribution run_qpe_naive(const EncodedSystem& sys,
                                const QpeConfig& cfg) {
  if (cfg.n_ancilla < 1) throw ConsistencyError("need at least one ancilla");
  check_plan(cfg.plan);
  check_branch(sys.spectrum.ground_energy, cfg.plan.time);
  const int l = sys.n_system_qubits();
  const int n = cfg.n_ancilla;
  check_capacity(l + n);
  const QubitHamiltonian ordered = order_terms(sys.h, cfg.plan.ordering);

  Statevector psi = prepare_input_state(sys, cfg.input_state);
  for (int k = 0; k < n; ++k) psi.extend_with_zero_qubit();
  for (int k = 0; k < n; ++k) psi.apply_hadamard(l + k);
  // Ancilla k (1-based, most significant first) controls U^{2^{N-k}}.
  for (int k = 1; k <= n; ++k)
    apply_trotterized_evolution(psi, ordered, cfg.plan, l + k - 1,
                                std::uint64_t{1} << (n - k));
  return finish_readout(psi, l, n);
}

PhaseDistribution run_qpe_sequential(const EncodedSystem& sys,
                                     const QpeConfig& cfg) {
  if (cfg.n_ancilla < 1) throw ConsistencyError("need at least one ancilla");
  check_plan(cfg.plan);
  check_branch(sys.spectrum.ground_energy, cfg.plan.time);
  const int l = sys.n_system_qubits();
  const int n = cfg.n_ancilla;
  check_capacity(l + n);
  const QubitHamiltonian ordered = order_terms(sys.h, cfg.plan.ordering);

  Statevector psi = prepare_input_state(sys, cfg.input_state);
  for (int k = 1; k <= n; ++k) {
    psi.extend_with_zero_qubit();
    const int anc = psi.n_qubits() - 1;
    psi.apply_hadamard(anc);
    apply_trotterized_evolution(psi, ordered, cfg.plan, anc,
                                std::uint64_t{1} << (n - k));
  }
  return finish_readout(psi, l, n);
}

PhaseDistribution trotter_free_distribution(const EncodedSystem& sys,
                                            int n_ancilla, InputKind input,
                                            double time) {
  if (n_ancilla < 1 || n_ancilla > 30)
    throw CapacityError("ancilla count out of range");
  check_branch(sys.spectrum.ground_energy, time);
  const Eigen::Index dim = sys.spectrum.eigenvalues.size();

  Eigen::VectorXd weights = Eigen::VectorXd::Zero(dim);
  if (input == InputKind::FullCI) {
    weights(0) = 1.0;
  } else {
    const std::uint64_t occ =
        hartree_fock_occupations(sys.l, sys.n_alpha, sys.n_beta);
    const auto row =
        static_cast<Eigen::Index>(sys.sector.index.at(occ));
    weights = sys.spectrum.eigenvectors.row(row).transpose().cwiseAbs2();
  }

  const std::size_t bins = std::size_t{1} << n_ancilla;
  const auto y = static_cast<double>(bins);
  PhaseDistribution dist;
  dist.n_ancilla = n_ancilla;
  dist.probabilities.assign(bins, 0.0);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double w = weights(k);
    if (w < 1e-16) continue;
    double phi = std::fmod(-sys.spectrum.eigenvalues(k) * time / (2.0 * kPi), 1.0);
    if (phi < 0) phi += 1.0;
    for (std::size_t x = 0; x < bins; ++x) {
      const double d = phi - static_cast<double>(x) / y;
      const double den = std::sin(kPi * d);
      // |sin(pi 2^N d) / (2^N sin(pi d))|^2 with limit 1 on the grid
      double kern = 1.0;
      if (std::abs(den) > 1e-12) {
        const double r = std::sin(kPi * y * d) / (y * den);
        kern = r * r;
      }
      dist.probabilities[x] += w * kern;
    }
  }
  return dist;
}

std::vector<std::uint64_t> sample_counts(const PhaseDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::discrete_distribution<std::size_t> pick(dist.probabilities.begin(),
                                               dist.probabilities.end());
  std::vector<std::uint64_t> counts(dist.probabilities.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[pick(gen)];
  return counts;
}

void write_distribution_csv(std::ostream& os, const PhaseDistribution& dist) {
  os << "bin,phase,probability\n";
  char buf[96];
  for (std::size_t x = 0; x < dist.probabilities.size(); ++x) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", x, dist.phase_of(x),
                  dist.probabilities[x]);
    os << buf;
  }
}

}  // namespace qpesim
