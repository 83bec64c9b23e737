#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qpesim/oracle.hpp"
#include "qpesim/pauli.hpp"
#include "qpesim/statevector.hpp"

namespace qpesim {

enum class TrotterOrder { First, Second };

struct TrotterPlan {
  TrotterOrder order = TrotterOrder::First;
  int slices = 1;     // M
  double time = 1.0;  // t, atomic units with hbar = 1
  Ordering ordering = Ordering::Magnitude;
};

enum class InputKind { HartreeFock, FullCI };

struct QpeConfig {
  int n_ancilla = 0;
  InputKind input_state = InputKind::FullCI;
  TrotterPlan plan;
};

struct PhaseDistribution {
  int n_ancilla = 0;
  std::vector<double> probabilities;  // 2^N bins, bin x has phase x/2^N

  double phase_of(std::size_t bin) const {
    return static_cast<double>(bin) / static_cast<double>(probabilities.size());
  }
};

// One application of (U_Trotter)^repetitions, optionally controlled. The
// Hamiltonian must already be in the plan's term order; higher powers repeat
// the whole M-slice product. The identity coefficient enters as the phase
// -w_I * t * repetitions.
void apply_trotterized_evolution(Statevector& psi, const QubitHamiltonian& h,
                                 const TrotterPlan& plan,
                                 std::optional<int> control,
                                 std::uint64_t repetitions);

Statevector prepare_input_state(const EncodedSystem& sys, InputKind kind);

PhaseDistribution run_qpe_naive(const EncodedSystem& sys, const QpeConfig& cfg);
PhaseDistribution run_qpe_sequential(const EncodedSystem& sys,
                                     const QpeConfig& cfg);

// Exact-U reference: the input decomposed in the oracle eigenbasis and the
// closed-form QPE kernel summed per eigenphase. No statevector involved.
PhaseDistribution trotter_free_distribution(const EncodedSystem& sys,
                                            int n_ancilla, InputKind input,
                                            double time);

// Shot-sampling wrapper over an exact distribution.
std::vector<std::uint64_t> sample_counts(const PhaseDistribution& dist,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

void write_distribution_csv(std::ostream& os, const PhaseDistribution& dist);

}  // namespace qpesim
