#include "teso/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace teso {

void validate(const TesoConfig& config) {
  if (config.T < 1) {
    throw std::invalid_argument("config: T must be positive");
  }
  if (config.n_init < 0 || config.n_init > config.T) {
    throw std::invalid_argument("config: require 0 <= n_init <= T");
  }
  if (config.n_rep < 1) {
    throw std::invalid_argument("config: n_rep must be positive");
  }
  if (!(config.eta_init > 0.0) || !(config.eta_final > 0.0)) {
    throw std::invalid_argument("config: eta values must be positive");
  }
  if (config.eta_final > config.eta_init) {
    throw std::invalid_argument("config: require eta_final <= eta_init");
  }
  if (config.tabu_capacity < 0) {
    throw std::invalid_argument("config: tabu_capacity must be non-negative");
  }
  if (config.elite_capacity < 1) {
    throw std::invalid_argument("config: elite_capacity must be positive");
  }
  if (!(config.p_div >= 0.0 && config.p_div <= 1.0)) {
    throw std::invalid_argument("config: p_div must lie in [0,1]");
  }
  if (config.dt_max < 1) {
    throw std::invalid_argument("config: dt_max must be positive");
  }
  if (!(config.bin_width > 0.0)) {
    throw std::invalid_argument("config: bin_width must be positive");
  }
  if (config.pilot_reps < 1 || config.pilot_reps > config.n_rep) {
    throw std::invalid_argument("config: require 1 <= pilot_reps <= n_rep");
  }
}

SearchState::SearchState(const TesoConfig& config)
    : f_best(config.direction == Direction::Minimize
                 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity()),
      eta(config.eta_init),
      tabu(config.disable_tabu ? 0 : config.tabu_capacity),
      elite(config.elite_capacity, config.direction) {}

Candidate random_candidate(const DecisionSpace& space, RngStream& stream) {
  Candidate c;
  c.x.reserve(static_cast<std::size_t>(space.dimension));
  for (int i = 0; i < space.dimension; ++i) {
    c.x.push_back(stream.uniform(space.lower, space.upper));
  }
  return c;
}

Candidate perturb(const Candidate& x, double eta, const DecisionSpace& space,
                  RngStream& stream) {
  const double sigma = eta * space.range();
  Candidate out = x;
  for (double& xi : out.x) {
    xi = std::clamp(xi + stream.normal(0.0, sigma), space.lower, space.upper);
  }
  return out;
}

std::pair<Candidate, TrialMode> generate_candidate(const SearchState& state,
                                                   const TesoConfig& config,
                                                   const DecisionSpace& space,
                                                   RngStream& stream) {
  if (state.t <= config.n_init || stream.uniform01() < config.p_div) {
    return {random_candidate(space, stream), TrialMode::Diversify};
  }
  if (config.disable_elite) {
    // Ablation: intensify from the incumbent best instead of the pool.
    if (state.x_best) {
      return {perturb(*state.x_best, state.eta, space, stream),
              TrialMode::Intensify};
    }
  } else if (auto xe = state.elite.select(stream)) {
    return {perturb(*xe, state.eta, space, stream), TrialMode::Intensify};
  }
  return {random_candidate(space, stream), TrialMode::Diversify};
}

AspirationOutcome aspiration_met(const Candidate& x, const SearchState& state,
                                 const TesoConfig& config,
                                 const StochasticObjective& model,
                                 RngStream& eval_stream) {
  AspirationOutcome out;
  auto samples = draw_samples(model, x, 0, config.pilot_reps, eval_stream);
  out.pilot = summarize(samples, /*keep_samples=*/true);
  out.met = is_improvement(out.pilot.mean, state.f_best, config.direction);
  return out;
}

bool is_improvement(double mean, double f_best, Direction direction) {
  return direction == Direction::Minimize ? mean < f_best : mean > f_best;
}

double update_noise(int t, int T, double eta_init, double eta_final) {
  return std::lerp(eta_init, eta_final,
                   static_cast<double>(t) / static_cast<double>(T));
}

OptimizationResult run(const TesoConfig& config,
                       const StochasticObjective& model,
                       const DecisionSpace& space) {
  validate(config);

  RngStream root(config.base_seed);
  SearchState state(config);
  state.trace.reserve(static_cast<std::size_t>(config.T));
  int evaluations = 0;
  bool stopped = false;
  int last_t = 0;

  for (int t = 1; t <= config.T; ++t) {
    state.t = t;
    last_t = t;
    RngStream trial = root.child(static_cast<std::uint64_t>(t));
    RngStream gen = trial.child(0);
    RngStream eval = trial.child(1);

    auto [x, mode] = generate_candidate(state, config, space, gen);
    const double eta_used = state.eta;
    const CandidateKey key = represent(x, space, config.bin_width);

    TrialStatus status = TrialStatus::Evaluated;
    std::vector<double> samples;
    if (state.tabu.contains(key)) {
      AspirationOutcome asp = aspiration_met(x, state, config, model, eval);
      if (!asp.met) {
        TrialRecord rec;
        rec.t = t;
        rec.candidate = x;
        rec.status = TrialStatus::SkippedTabu;
        rec.best_so_far = state.f_best;
        rec.eta = eta_used;
        rec.mode = mode;
        state.trace.push_back(std::move(rec));
        continue;  // tabu, non-aspirated: next trial, counters untouched
      }
      status = TrialStatus::AspirationAccepted;
      samples = std::move(*asp.pilot.samples);
    }

    // Full evaluation; an aspirated candidate's pilot samples occupy the
    // leading replication slots, so the stream layout matches the
    // no-pilot path and the total stays at n_rep when they are reused.
    if (samples.empty()) {
      samples = draw_samples(model, x, 0, config.n_rep, eval);
    } else if (config.reuse_pilot) {
      auto rest = draw_samples(model, x, config.pilot_reps,
                               config.n_rep - config.pilot_reps, eval);
      samples.insert(samples.end(), rest.begin(), rest.end());
    } else {
      samples = draw_samples(model, x, config.pilot_reps, config.n_rep, eval);
    }
    const Evaluation ev = summarize(samples);
    ++evaluations;

    if (is_improvement(ev.mean, state.f_best, config.direction)) {
      state.f_best = ev.mean;
      state.x_best = x;
      state.dt = 0;
    } else if (t > config.n_init) {
      ++state.dt;
    }
    state.tabu.insert(key);
    state.elite.insert(x, ev.mean);

    TrialRecord rec;
    rec.t = t;
    rec.candidate = std::move(x);
    rec.status = status;
    rec.mean = ev.mean;
    rec.std_dev = ev.std_dev;
    rec.best_so_far = state.f_best;
    rec.eta = eta_used;
    rec.mode = mode;
    state.trace.push_back(std::move(rec));

    state.eta = update_noise(t, config.T, config.eta_init, config.eta_final);
    if (state.dt >= config.dt_max) {
      stopped = true;
      break;
    }
  }

  if (!state.x_best) {
    throw std::runtime_error("optimizer: no candidate was ever evaluated");
  }

  OptimizationResult result;
  result.x_best = *state.x_best;
  result.f_best = state.f_best;
  result.trials_used = last_t;
  result.evaluations_used = evaluations;
  result.terminated_early = stopped && last_t < config.T;
  result.trace = std::move(state.trace);
  return result;
}

OptimizationResult run(const TesoConfig& config,
                       const StochasticObjective& model) {
  return run(config, model, model.space());
}

}  // namespace teso
