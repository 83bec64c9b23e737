#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qpesim/pauli.hpp"
#include "qpesim/qpe.hpp"

namespace qpesim {

struct PeakFit {
  double mu = 0.0;         // phase in [0, 1)
  double sigma = 0.0;      // phase units
  double amplitude = 0.0;  // probability height
  double rss = 0.0;
  std::size_t window_lo = 0;  // first and last bin of the fit window
  std::size_t window_hi = 0;  // (circular range when lo > hi)
};

// Least-squares Gaussian A exp(-(phi-mu)^2 / 2 sigma^2) over a window of
// bins around the strict maximum, with circular unwrapping at phi = 1.
PeakFit fit_gaussian_peak(const PhaseDistribution& d, int window_halfwidth = 3);

// E = -2 pi mu / t on the principal branch.
double phase_to_energy(double mu, double time);

// Local maxima at or above the threshold outside the primary fit window,
// as (phase, probability) sorted by descending probability.
std::vector<std::pair<double, double>> detect_secondary_peaks(
    const PhaseDistribution& d, const PeakFit& primary,
    double threshold = 0.01);

// One fitted ground-state energy per run configuration.
struct RunEnergy {
  bool trotter_free = false;
  Ordering ordering = Ordering::Magnitude;
  int trotter_order = 0;  // 1 or 2; 0 for the Trotter-free reference
  int m_slices = 0;       // M; unused for the Trotter-free reference
  double energy = 0.0;    // Hartree
};

struct RatioRecord {
  bool trotter_free = false;
  Ordering ordering = Ordering::Magnitude;
  int trotter_order = 0;
  int m_slices = 0;
  double e_monomer = 0.0;
  double e_dimer = 0.0;
  double ratio = 0.0;
  double normalized_ratio = 0.0;  // NaN when no Trotter-free companion
};

// Pairs monomer and dimer runs with identical settings and normalizes the
// energy ratios by the Trotter-free ratio.
std::vector<RatioRecord> size_consistency_table(
    const std::vector<RunEnergy>& monomer, const std::vector<RunEnergy>& dimer);

void write_ratio_csv(std::ostream& os, const std::vector<RatioRecord>& table);
void write_peak_csv(std::ostream& os, const PeakFit& fit);

}  // namespace qpesim
