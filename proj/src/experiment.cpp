#include "qpesim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qpesim/errors.hpp"
#include "qpesim/integrals.hpp"

namespace qpesim {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int n = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParseError("config: " + key + " expects an integer, got '" + v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("config: " + key + " expects a number, got '" + v + "'");
  }
}

bool parse_flag(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError("config: " + key + " expects a boolean, got '" + v + "'");
}

Ordering parse_ordering(const std::string& v) {
  if (v == "magnitude") return Ordering::Magnitude;
  if (v == "lexicographic" || v == "lex") return Ordering::Lexicographic;
  throw ParseError("config: unknown ordering '" + v + "'");
}

const char* ordering_name(Ordering o) {
  return o == Ordering::Magnitude ? "magnitude" : "lexicographic";
}

const char* encoding_name(EncodingKind k) {
  switch (k) {
    case EncodingKind::Jw: return "jw";
    case EncodingKind::Parity: return "parity";
    case EncodingKind::JwTapered: return "jw_tapered";
  }
  return "?";
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// The systems a command iterates over: tag used in file names + fcidump path.
struct SystemSlot {
  const char* tag;
  const std::string* path;
};

std::vector<SystemSlot> system_slots(const ExperimentConfig& cfg) {
  std::vector<SystemSlot> slots;
  if (!cfg.monomer_fcidump.empty())
    slots.push_back({"monomer", &cfg.monomer_fcidump});
  if (!cfg.dimer_fcidump_cmo.empty())
    slots.push_back({"dimer_cmo", &cfg.dimer_fcidump_cmo});
  if (!cfg.dimer_fcidump_lmo.empty())
    slots.push_back({"dimer_lmo", &cfg.dimer_fcidump_lmo});
  if (slots.empty())
    throw ParseError("config: no fcidump paths given");
  return slots;
}

void check_grid(const ExperimentConfig& cfg) {
  if (cfg.orderings.empty() || cfg.orders.empty() || cfg.slices.empty())
    throw ConsistencyError("config: empty run grid");
  for (int o : cfg.orders)
    if (o != 1 && o != 2)
      throw ParseError("config: trotter order must be 1 or 2");
}

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name,
                          const std::string& run_details) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const fs::path p = fs::path(cfg.output_dir) / name;
  std::ofstream os(p);
  if (!os) throw ParseError("cannot open output file " + p.string());
  os << "# " << settings_string(cfg);
  if (!run_details.empty()) os << " " << run_details;
  os << "\n";
  return os;
}

TrotterPlan make_plan(const ExperimentConfig& cfg, Ordering ordering, int order,
                      int m) {
  TrotterPlan plan;
  plan.order = order == 1 ? TrotterOrder::First : TrotterOrder::Second;
  plan.slices = m;
  plan.time = cfg.time;
  plan.ordering = ordering;
  return plan;
}

std::string run_tag(Ordering ordering, int order, int m) {
  return std::string(ordering_name(ordering)) + "_o" + std::to_string(order) +
         "_M" + std::to_string(m);
}

// Fit the primary peak and convert to energy; used by cmd_ratio where a fit
// failure for any grid point invalidates the whole table.
double fitted_energy(const PhaseDistribution& dist, double time) {
  const PeakFit fit = fit_gaussian_peak(dist);
  return phase_to_energy(fit.mu, time);
}

std::vector<RunEnergy> grid_energies(const ExperimentConfig& cfg,
                                     const EncodedSystem& sys,
                                     const char* tag) {
  std::vector<RunEnergy> rows;
  if (cfg.include_trotter_free) {
    const PhaseDistribution dist = trotter_free_distribution(
        sys, cfg.n_ancilla, cfg.input_state, cfg.time);
    RunEnergy r;
    r.trotter_free = true;
    r.energy = fitted_energy(dist, cfg.time);
    rows.push_back(r);
  }
  for (Ordering ordering : cfg.orderings)
    for (int order : cfg.orders)
      for (int m : cfg.slices) {
        QpeConfig qc;
        qc.n_ancilla = cfg.n_ancilla;
        qc.input_state = cfg.input_state;
        qc.plan = make_plan(cfg, ordering, order, m);
        const PhaseDistribution dist = run_qpe_sequential(sys, qc);
        RunEnergy r;
        r.ordering = ordering;
        r.trotter_order = order;
        r.m_slices = m;
        r.energy = fitted_energy(dist, cfg.time);
        rows.push_back(r);
        std::cerr << tag << " " << run_tag(ordering, order, m)
                  << " E=" << fmt(r.energy) << "\n";
      }
  return rows;
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "monomer_fcidump") {
    cfg.monomer_fcidump = value;
  } else if (key == "dimer_fcidump_cmo") {
    cfg.dimer_fcidump_cmo = value;
  } else if (key == "dimer_fcidump_lmo") {
    cfg.dimer_fcidump_lmo = value;
  } else if (key == "encoding") {
    if (value == "jw")
      cfg.encoding = EncodingKind::Jw;
    else if (value == "jw_tapered")
      cfg.encoding = EncodingKind::JwTapered;
    else
      throw ParseError("config: unknown encoding '" + value + "'");
  } else if (key == "t") {
    cfg.time = parse_real(key, value);
  } else if (key == "n_ancilla") {
    cfg.n_ancilla = parse_int(key, value);
  } else if (key == "input_state") {
    if (value == "hf")
      cfg.input_state = InputKind::HartreeFock;
    else if (value == "fci")
      cfg.input_state = InputKind::FullCI;
    else
      throw ParseError("config: unknown input_state '" + value + "'");
  } else if (key == "orderings") {
    cfg.orderings.clear();
    for (const auto& item : split_list(value))
      cfg.orderings.push_back(parse_ordering(item));
  } else if (key == "orders") {
    cfg.orders.clear();
    for (const auto& item : split_list(value))
      cfg.orders.push_back(parse_int(key, item));
  } else if (key == "slices") {
    cfg.slices.clear();
    for (const auto& item : split_list(value))
      cfg.slices.push_back(parse_int(key, item));
  } else if (key == "include_trotter_free") {
    cfg.include_trotter_free = parse_flag(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else {
    throw ParseError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config: line " + std::to_string(lineno) +
                       " is not key=value");
    set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string settings_string(const ExperimentConfig& cfg) {
  std::ostringstream ss;
  ss << "encoding=" << encoding_name(cfg.encoding) << " t=" << fmt(cfg.time)
     << " n_ancilla=" << cfg.n_ancilla << " input_state="
     << (cfg.input_state == InputKind::HartreeFock ? "hf" : "fci")
     << " orderings=";
  for (std::size_t i = 0; i < cfg.orderings.size(); ++i)
    ss << (i ? "," : "") << ordering_name(cfg.orderings[i]);
  ss << " orders=";
  for (std::size_t i = 0; i < cfg.orders.size(); ++i)
    ss << (i ? "," : "") << cfg.orders[i];
  ss << " slices=";
  for (std::size_t i = 0; i < cfg.slices.size(); ++i)
    ss << (i ? "," : "") << cfg.slices[i];
  ss << " include_trotter_free=" << (cfg.include_trotter_free ? "true" : "false")
     << " seed=" << cfg.seed;
  return ss.str();
}

EncodedSystem load_system(const std::string& fcidump_path, EncodingKind kind) {
  try {
    return make_encoded_system(parse_fcidump_file(fcidump_path), kind);
  } catch (const std::exception& e) {
    throw ParseError(fcidump_path + ": " + e.what());
  }
}

int cmd_spectrum(const ExperimentConfig& cfg) {
  for (const SystemSlot& slot : system_slots(cfg)) {
    const EncodedSystem sys = load_system(*slot.path, cfg.encoding);
    auto os = open_output(cfg, std::string("spectrum_") + slot.tag + ".csv",
                          std::string("system=") + slot.tag);
    write_spectrum_csv(os, sys.spectrum);
    std::cerr << slot.tag << ": " << sys.spectrum.eigenvalues.size()
              << " eigenvalues, E0=" << fmt(sys.spectrum.ground_energy) << "\n";
  }
  return 0;
}

int cmd_qpe(const ExperimentConfig& cfg) {
  check_grid(cfg);
  int failures = 0;
  for (const SystemSlot& slot : system_slots(cfg)) {
    const EncodedSystem sys = load_system(*slot.path, cfg.encoding);
    std::vector<std::pair<std::string, PhaseDistribution>> runs;
    if (cfg.include_trotter_free)
      runs.emplace_back("trotter_free",
                        trotter_free_distribution(sys, cfg.n_ancilla,
                                                  cfg.input_state, cfg.time));
    for (Ordering ordering : cfg.orderings)
      for (int order : cfg.orders)
        for (int m : cfg.slices) {
          const std::string tag = run_tag(ordering, order, m);
          QpeConfig qc;
          qc.n_ancilla = cfg.n_ancilla;
          qc.input_state = cfg.input_state;
          qc.plan = make_plan(cfg, ordering, order, m);
          try {
            runs.emplace_back(tag, run_qpe_sequential(sys, qc));
          } catch (const std::exception& e) {
            // one oversized grid point must not kill the rest of the grid
            std::cerr << slot.tag << " " << tag << ": " << e.what() << "\n";
            ++failures;
          }
        }
    for (const auto& [tag, dist] : runs) {
      const std::string details =
          std::string("system=") + slot.tag + " run=" + tag;
      auto os = open_output(
          cfg, std::string("qpe_") + slot.tag + "_" + tag + ".csv", details);
      write_distribution_csv(os, dist);
      try {
        const PeakFit fit = fit_gaussian_peak(dist);
        auto fs = open_output(
            cfg, std::string("fit_") + slot.tag + "_" + tag + ".csv", details);
        write_peak_csv(fs, fit);
        std::cerr << slot.tag << " " << tag << " mu=" << fmt(fit.mu)
                  << " E=" << fmt(phase_to_energy(fit.mu, cfg.time)) << "\n";
      } catch (const std::exception& e) {
        std::cerr << slot.tag << " " << tag << ": " << e.what() << "\n";
        ++failures;
      }
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_ratio(const ExperimentConfig& cfg) {
  check_grid(cfg);
  if (cfg.monomer_fcidump.empty())
    throw ParseError("config: ratio needs monomer_fcidump");
  if (cfg.dimer_fcidump_cmo.empty() && cfg.dimer_fcidump_lmo.empty())
    throw ParseError("config: ratio needs at least one dimer fcidump");

  const EncodedSystem monomer = load_system(cfg.monomer_fcidump, cfg.encoding);
  const std::vector<RunEnergy> mono_rows =
      grid_energies(cfg, monomer, "monomer");

  const std::pair<const char*, const std::string*> dimers[] = {
      {"cmo", &cfg.dimer_fcidump_cmo}, {"lmo", &cfg.dimer_fcidump_lmo}};
  for (const auto& [basis, path] : dimers) {
    if (path->empty()) continue;
    const EncodedSystem dimer = load_system(*path, cfg.encoding);
    const std::vector<RunEnergy> dimer_rows =
        grid_energies(cfg, dimer, (std::string("dimer_") + basis).c_str());
    const auto table = size_consistency_table(mono_rows, dimer_rows);
    auto os = open_output(cfg, std::string("ratio_") + basis + ".csv",
                          std::string("dimer_basis=") + basis);
    write_ratio_csv(os, table);
  }
  return 0;
}

int cmd_bench(const ExperimentConfig& cfg) {
  if (cfg.monomer_fcidump.empty())
    throw ParseError("config: bench needs monomer_fcidump");
  const EncodedSystem sys = load_system(cfg.monomer_fcidump, cfg.encoding);

  auto os = open_output(cfg, "bench.csv", "");
  os << "N,naive_seconds,sequential_seconds,speedup\n";
  using clock = std::chrono::steady_clock;
  for (int n_anc : {4, 6, 8}) {
    QpeConfig qc;
    qc.n_ancilla = n_anc;
    qc.input_state = cfg.input_state;
    qc.plan = make_plan(cfg, cfg.orderings.front(), cfg.orders.front(),
                        cfg.slices.front());
    const auto t0 = clock::now();
    const PhaseDistribution a = run_qpe_naive(sys, qc);
    const auto t1 = clock::now();
    const PhaseDistribution b = run_qpe_sequential(sys, qc);
    const auto t2 = clock::now();
    const double naive = std::chrono::duration<double>(t1 - t0).count();
    const double seq = std::chrono::duration<double>(t2 - t1).count();
    double max_diff = 0.0;
    for (std::size_t i = 0; i < a.probabilities.size(); ++i)
      max_diff = std::max(max_diff,
                          std::abs(a.probabilities[i] - b.probabilities[i]));
    os << n_anc << "," << fmt(naive) << "," << fmt(seq) << ","
       << fmt(naive / seq) << "\n";
    std::cerr << "N=" << n_anc << " naive=" << fmt(naive)
              << "s sequential=" << fmt(seq) << "s speedup=" << fmt(naive / seq)
              << " max|dP|=" << fmt(max_diff) << "\n";
  }
  return 0;
}

}  // namespace qpesim
