#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "teso/config.hpp"

namespace teso {

// Options shared by the config-driven commands.
struct CommonOptions {
  std::string config_path;             // empty: built-in defaults
  std::vector<std::string> overrides;  // section.key=value, applied in order
  std::optional<std::uint64_t> seed;   // overrides suite.base_seed
  std::optional<std::string> out_dir;  // overrides suite.output_dir
  std::optional<std::string> wait_mode;  // "queue" | "sojourn"
};

// Load + overrides + flag overrides + validation, in that order.
ExperimentConfig resolve_config(const CommonOptions& common);

struct OptimizeOptions {
  CommonOptions common;
};

struct BenchOptions {
  CommonOptions common;
  int jobs = 1;  // 0: hardware concurrency
};

struct OracleOptions {
  double lambda = 2.5;
  int k = 3;
  double cost_c = 0.5;
  double mu_lower = 1.0;
  double mu_upper = 4.0;
  double step = 0.001;
  std::string wait_mode = "queue";
};

struct SimulateOptions {
  CommonOptions common;
  double mu = 0.0;
  int reps = 0;  // 0: use the configured n_rep
};

// Each command returns its process exit status (0 = success) and writes
// human output to `out`, diagnostics to `err`.
int cmd_optimize(const OptimizeOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out,
              std::ostream& err);
int cmd_oracle(const OracleOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err);

// Parses argv and dispatches to the commands above.
int run_cli(int argc, const char* const* argv);

}  // namespace teso
