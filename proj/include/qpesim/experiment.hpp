#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpesim/analysis.hpp"
#include "qpesim/encoding.hpp"
#include "qpesim/oracle.hpp"
#include "qpesim/qpe.hpp"

namespace qpesim {

struct ExperimentConfig {
  std::string monomer_fcidump;
  std::string dimer_fcidump_cmo;
  std::string dimer_fcidump_lmo;
  EncodingKind encoding = EncodingKind::JwTapered;
  double time = 1.0;
  int n_ancilla = 8;
  InputKind input_state = InputKind::FullCI;
  std::vector<Ordering> orderings{Ordering::Magnitude, Ordering::Lexicographic};
  std::vector<int> orders{1, 2};
  std::vector<int> slices{1, 2, 5, 10};
  bool include_trotter_free = true;
  std::string output_dir = ".";
  std::uint64_t seed = 0;  // shot-sampling wrapper only
};

// key=value file; '#' starts a comment, blank lines are skipped.
ExperimentConfig load_config(const std::string& path);

// One assignment, shared between the config file and command-line overrides.
// Throws ParseError on unknown keys or unparsable values.
void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

// Canonical one-line form of the full configuration; embedded as a comment
// header in every file the commands emit.
std::string settings_string(const ExperimentConfig& cfg);

EncodedSystem load_system(const std::string& fcidump_path, EncodingKind kind);

int cmd_spectrum(const ExperimentConfig& cfg);
int cmd_qpe(const ExperimentConfig& cfg);
int cmd_ratio(const ExperimentConfig& cfg);
int cmd_bench(const ExperimentConfig& cfg);

}  // namespace qpesim
