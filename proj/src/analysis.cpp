#include "qpesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "qpesim/errors.hpp"

namespace qpesim {

namespace {

double gauss(double phi, double a, double mu, double sigma) {
  const double d = (phi - mu) / sigma;
  return a * std::exp(-0.5 * d * d);
}

const char* ordering_label(Ordering o) {
  return o == Ordering::Magnitude ? "magnitude" : "lexicographic";
}

}  // namespace

PeakFit fit_gaussian_peak(const PhaseDistribution& d, int window_halfwidth) {
  const auto& p = d.probabilities;
  const auto bins = static_cast<long>(p.size());
  if (window_halfwidth < 1 || 2 * window_halfwidth + 1 > bins)
    throw FitError("fit window does not fit the distribution");

  const long b0 =
      std::max_element(p.begin(), p.end()) - p.begin();
  const double top = p[b0];
  long max_count = 0;
  for (double v : p) max_count += (v == top);
  if (max_count != 1)
    throw NoPeakError("distribution has no strict maximum bin");

  // Unwrapped phases around the maximum; bins wrap, phases do not.
  const long w = window_halfwidth;
  std::vector<double> phi(2 * w + 1), y(2 * w + 1);
  for (long off = -w; off <= w; ++off) {
    const long b = ((b0 + off) % bins + bins) % bins;
    phi[off + w] = static_cast<double>(b0 + off) / static_cast<double>(bins);
    y[off + w] = p[b];
  }

  const double fallback_mu =
      static_cast<double>(b0) / static_cast<double>(bins);
  double a = top;
  double mu = fallback_mu;
  double sigma = 1.0 / static_cast<double>(bins);

  // Levenberg-Marquardt on (A, mu, sigma).
  double lambda = 1e-3;
  bool converged = false;
  const auto rss_of = [&](double aa, double mm, double ss) {
    double acc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double r = gauss(phi[i], aa, mm, ss) - y[i];
      acc += r * r;
    }
    return acc;
  };
  double rss = rss_of(a, mu, sigma);
  for (int it = 0; it < 200 && !converged; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double e = gauss(phi[i], 1.0, mu, sigma);
      const double f = a * e;
      const double r = f - y[i];
      Eigen::Vector3d j;
      j << e, f * (phi[i] - mu) / (sigma * sigma),
          f * (phi[i] - mu) * (phi[i] - mu) / (sigma * sigma * sigma);
      jtj += j * j.transpose();
      jtr += j * r;
    }
    Eigen::Matrix3d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal();
    const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
    if (!step.allFinite()) break;
    const double a1 = a + step(0), mu1 = mu + step(1), s1 = sigma + step(2);
    const double rss1 = (s1 > 0) ? rss_of(a1, mu1, s1)
                                 : std::numeric_limits<double>::infinity();
    if (rss1 <= rss) {
      a = a1;
      mu = mu1;
      sigma = s1;
      rss = rss1;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (step.cwiseAbs().maxCoeff() < 1e-12) converged = true;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  if (!converged || !std::isfinite(rss) || sigma <= 0.0) {
    std::ostringstream msg;
    msg << "Gaussian fit did not converge; fallback mu=" << fallback_mu;
    throw FitError(msg.str());
  }

  PeakFit fit;
  fit.amplitude = a;
  fit.mu = mu - std::floor(mu);
  fit.sigma = std::abs(sigma);
  fit.rss = rss;
  fit.window_lo = static_cast<std::size_t>(((b0 - w) % bins + bins) % bins);
  fit.window_hi = static_cast<std::size_t>(((b0 + w) % bins + bins) % bins);
  return fit;
}

double phase_to_energy(double mu, double time) {
  return -2.0 * std::numbers::pi * mu / time;
}

std::vector<std::pair<double, double>> detect_secondary_peaks(
    const PhaseDistribution& d, const PeakFit& primary, double threshold) {
  const auto& p = d.probabilities;
  const auto bins = static_cast<long>(p.size());
  const auto in_window = [&](long b) {
    const auto lo = static_cast<long>(primary.window_lo);
    const auto hi = static_cast<long>(primary.window_hi);
    return lo <= hi ? (b >= lo && b <= hi) : (b >= lo || b <= hi);
  };
  std::vector<std::pair<double, double>> out;
  for (long b = 0; b < bins; ++b) {
    if (in_window(b) || p[b] < threshold) continue;
    const double left = p[(b - 1 + bins) % bins];
    const double right = p[(b + 1) % bins];
    if (p[b] >= left && p[b] >= right)
      out.emplace_back(static_cast<double>(b) / static_cast<double>(bins),
                       p[b]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.second > r.second; });
  return out;
}

std::vector<RatioRecord> size_consistency_table(
    const std::vector<RunEnergy>& monomer,
    const std::vector<RunEnergy>& dimer) {
  const auto find_companion = [](const std::vector<RunEnergy>& side,
                                 const RunEnergy& key) -> const RunEnergy* {
    for (const auto& r : side) {
      if (r.trotter_free != key.trotter_free) continue;
      if (key.trotter_free) return &r;
      if (r.ordering == key.ordering && r.trotter_order == key.trotter_order &&
          r.m_slices == key.m_slices)
        return &r;
    }
    return nullptr;
  };

  double ratio_tf = std::numeric_limits<double>::quiet_NaN();
  for (const auto& m : monomer) {
    if (!m.trotter_free) continue;
    const RunEnergy* dm = find_companion(dimer, m);
    if (!dm) throw PairingError("Trotter-free dimer companion missing");
    ratio_tf = dm->energy / m.energy;
  }

  std::vector<RatioRecord> table;
  table.reserve(monomer.size());
  for (const auto& m : monomer) {
    const RunEnergy* dm = find_companion(dimer, m);
    if (!dm) throw PairingError("dimer companion run missing");
    RatioRecord rec;
    rec.trotter_free = m.trotter_free;
    rec.ordering = m.ordering;
    rec.trotter_order = m.trotter_free ? 0 : m.trotter_order;
    rec.m_slices = m.m_slices;
    rec.e_monomer = m.energy;
    rec.e_dimer = dm->energy;
    rec.ratio = dm->energy / m.energy;
    rec.normalized_ratio = m.trotter_free ? 1.0 : rec.ratio / ratio_tf;
    table.push_back(rec);
  }
  return table;
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioRecord>& table) {
  os << "ordering,trotter_order,M,E_monomer,E_dimer,ratio,normalized_ratio\n";
  char buf[224];
  for (const auto& r : table) {
    char mcol[24];
    if (r.trotter_free)
      std::snprintf(mcol, sizeof mcol, "inf");
    else
      std::snprintf(mcol, sizeof mcol, "%d", r.m_slices);
    std::snprintf(buf, sizeof buf, "%s,%d,%s,%.12g,%.12g,%.12g,%.12g\n",
                  r.trotter_free ? "none" : ordering_label(r.ordering),
                  r.trotter_order, mcol, r.e_monomer, r.e_dimer, r.ratio,
                  r.normalized_ratio);
    os << buf;
  }
}

void write_peak_csv(std::ostream& os, const PeakFit& fit) {
  os << "mu,sigma,amplitude,rss,window_lo,window_hi\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%zu,%zu\n", fit.mu,
                fit.sigma, fit.amplitude, fit.rss, fit.window_lo,
                fit.window_hi);
  os << buf;
}

}  // namespace qpesim
