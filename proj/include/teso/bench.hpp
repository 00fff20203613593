#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "teso/objective.hpp"
#include "teso/optimizer.hpp"
#include "teso/rng.hpp"

namespace teso {

enum class AlgorithmVariant { Prs, TesoNoElite, TesoNoTabu, TesoFull };

// Display names: PRS, TESO-noElite, TESO-noTabu, TESO.
std::string variant_name(AlgorithmVariant variant);

// Parses a display name back to the variant; throws on unknown names.
AlgorithmVariant parse_variant(const std::string& name);

struct AlgorithmSpec {
  AlgorithmVariant variant = AlgorithmVariant::TesoFull;
  TesoConfig config;
};

// Returns the config with the variant's ablation switches applied.
TesoConfig apply_variant(const AlgorithmSpec& spec);

struct MacroResult {
  int macro_index = 0;
  bool failed = false;
  std::string error;
  double final_best_mean = 0.0;
  Candidate final_best_x;
  double avg_last_50 = 0.0;
  double wall_time_seconds = 0.0;
  std::vector<double> best_so_far;  // one entry per generated trial
};

struct CurvePoint {
  int t = 0;
  double mean_best = 0.0;
  double se = 0.0;  // cross-macro standard error, 0 for a single macro
};

struct AlgorithmSummary {
  AlgorithmVariant variant = AlgorithmVariant::TesoFull;
  std::string name;
  int n_macro = 0;        // macros attempted
  int n_completed = 0;    // macros that produced a result
  double final_best_mean = 0.0;  // mean over completed macros
  double final_best_std = 0.0;   // sample std over completed macros
  double avg_last_50_mean = 0.0;
  double avg_last_50_std = 0.0;
  double mean_wall_seconds = 0.0;
  std::vector<CurvePoint> curve;
  std::vector<MacroResult> macros;  // ordered by macro_index
};

struct SuiteSummary {
  std::uint64_t base_seed = 0;
  int n_macro = 0;
  std::vector<AlgorithmSummary> algorithms;  // in spec order
};

// Pure random sampling baseline: T uniform candidates, each fully
// evaluated; best mean tracked; no memory, no early stop. The stream is
// consumed trial-by-trial exactly like the main loop consumes its root, so
// a diversification trial at the same index draws the same candidate.
OptimizationResult run_prs(const TesoConfig& config,
                           const StochasticObjective& model,
                           const DecisionSpace& space, RngStream stream);

// Mean over the last `window` evaluated trials' candidate means (fewer if
// the run evaluated fewer); skipped trials are not counted.
double average_last_evaluated(const std::vector<TrialRecord>& trace,
                              int window = 50);

// Per-trial cross-macro mean and standard error of best-so-far; traces
// shorter than length T (early termination) are carry-forward padded.
std::vector<CurvePoint> convergence_curve(const std::vector<MacroResult>& results,
                                          int T);

// Runs every spec n_macro times. Macro m of every algorithm reseeds its
// config with derive_seed(base_seed, m), so algorithms face common random
// numbers. Macros run on up to `jobs` threads (0 = hardware concurrency);
// aggregation is by macro index, independent of completion order. A failed
// macro is recorded and excluded from the statistics.
SuiteSummary run_suite(const std::vector<AlgorithmSpec>& specs,
                       const StochasticObjective& model,
                       const DecisionSpace& space, int n_macro,
                       std::uint64_t base_seed, int jobs = 1);

}  // namespace teso
