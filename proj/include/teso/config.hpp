#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "teso/bench.hpp"
#include "teso/mmk.hpp"
#include "teso/optimizer.hpp"

namespace teso {

// Configuration file problem: malformed syntax, unknown key, bad value.
// The message carries origin and line number.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  int n_macro = 30;
  std::vector<AlgorithmVariant> algorithms = {
      AlgorithmVariant::Prs, AlgorithmVariant::TesoNoElite,
      AlgorithmVariant::TesoNoTabu, AlgorithmVariant::TesoFull};
  std::uint64_t base_seed = 42;
  std::string output_dir = "out";

  bool operator==(const SuiteConfig&) const = default;
};

// The full experiment: sections [queue], [teso], [suite] of the INI file.
// The single base_seed lives in [suite] and is copied into teso.base_seed
// when a file is loaded or an override applied.
struct ExperimentConfig {
  QueueModel queue;
  TesoConfig teso;
  SuiteConfig suite;

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses INI text. Unknown sections or keys are hard errors, as are
// unparseable values; every error names `origin` and the line. Keys not
// present keep their defaults.
ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin = "<config>");

// Reads and parses a file; throws ConfigError when unreadable.
ExperimentConfig load_config(const std::string& path);

// Applies one "section.key=value" override, same key set as the file.
void apply_override(ExperimentConfig& config, const std::string& assignment);

// Serializes with every default materialized; parse_config(to_ini(c))
// reproduces c exactly.
std::string to_ini(const ExperimentConfig& config);

// Cross-module validation: queue model (stability included), optimizer
// invariants, suite sanity. Throws on the first violation.
void validate(const ExperimentConfig& config);

}  // namespace teso
