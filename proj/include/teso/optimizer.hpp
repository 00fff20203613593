#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "teso/memory.hpp"
#include "teso/objective.hpp"
#include "teso/rng.hpp"

namespace teso {

// All hyperparameters of the search, ablation switches included.
struct TesoConfig {
  int T = 300;       // total trial budget (generated candidates)
  int n_init = 20;   // leading trials forced to random diversification
  int n_rep = 30;    // replications per full evaluation
  double eta_init = 0.2;   // perturbation scale at t=0, fraction of range
  double eta_final = 0.01; // perturbation scale at t=T
  int tabu_capacity = 15;  // tenure equals capacity; 0 disables
  int elite_capacity = 10;
  double p_div = 0.2;  // diversification probability after warm-up
  int dt_max = 50;     // stop after this many non-improving evaluations
  Direction direction = Direction::Minimize;
  double bin_width = 0.01;  // discretization for tabu keys
  int pilot_reps = 5;       // screening replications for tabu candidates
  bool reuse_pilot = true;  // pilot samples count toward n_rep
  bool disable_tabu = false;
  bool disable_elite = false;  // intensify from x_best instead of elite pool
  std::uint64_t base_seed = 42;

  bool operator==(const TesoConfig&) const = default;
};

// Throws std::invalid_argument when any field or cross-field invariant
// (n_init <= T, eta_final <= eta_init, pilot_reps <= n_rep) is violated.
void validate(const TesoConfig& config);

enum class TrialMode { Diversify, Intensify };
enum class TrialStatus { Evaluated, SkippedTabu, AspirationAccepted };

struct TrialRecord {
  int t = 0;
  Candidate candidate;
  TrialStatus status = TrialStatus::Evaluated;
  std::optional<double> mean;     // absent iff SkippedTabu
  std::optional<double> std_dev;  // absent iff SkippedTabu
  double best_so_far = 0.0;       // incumbent after this trial
  double eta = 0.0;               // perturbation scale when generated
  TrialMode mode = TrialMode::Diversify;
};

struct SearchState {
  explicit SearchState(const TesoConfig& config);

  int t = 0;
  double f_best;
  std::optional<Candidate> x_best;
  double eta;
  int dt = 0;  // evaluated trials since last improvement
  TabuList tabu;
  EliteMemory elite;
  std::vector<TrialRecord> trace;
};

struct OptimizationResult {
  Candidate x_best;
  double f_best = 0.0;
  int trials_used = 0;
  int evaluations_used = 0;  // trials that received a full evaluation
  bool terminated_early = false;
  std::vector<TrialRecord> trace;
};

// Uniform candidate over the space; one uniform draw per coordinate.
Candidate random_candidate(const DecisionSpace& space, RngStream& stream);

// x'_i = clamp(x_i + g_i) with g_i ~ Normal(0, (eta * coordinate range)^2).
Candidate perturb(const Candidate& x, double eta, const DecisionSpace& space,
                  RngStream& stream);

// Diversify (uniform random) when t <= n_init or with probability p_div;
// otherwise perturb an elite selection (or x_best when the elite pool is
// disabled). Empty pool falls back to a random candidate, reported as
// Diversify.
std::pair<Candidate, TrialMode> generate_candidate(const SearchState& state,
                                                   const TesoConfig& config,
                                                   const DecisionSpace& space,
                                                   RngStream& stream);

struct AspirationOutcome {
  bool met = false;
  Evaluation pilot;  // samples retained so the full evaluation reuses them
};

// Screens a tabu candidate with pilot_reps replications; met iff the pilot
// mean strictly improves on f_best. Pilot replications use the first
// pilot_reps child streams of `eval_stream`, the same ones a full
// evaluation would consume.
AspirationOutcome aspiration_met(const Candidate& x, const SearchState& state,
                                 const TesoConfig& config,
                                 const StochasticObjective& model,
                                 RngStream& eval_stream);

// Strict comparison in the configured direction.
bool is_improvement(double mean, double f_best, Direction direction);

// Linear decay eta_init -> eta_final over the budget; exact at t = T.
double update_noise(int t, int T, double eta_init, double eta_final);

// The full search loop. All randomness derives from config.base_seed; the
// returned result, trace included, is bit-exactly reproducible.
OptimizationResult run(const TesoConfig& config, const StochasticObjective& model,
                       const DecisionSpace& space);

// Convenience overload using the model's own decision space.
OptimizationResult run(const TesoConfig& config,
                       const StochasticObjective& model);

}  // namespace teso
