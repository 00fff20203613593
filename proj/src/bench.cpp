#include "teso/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace teso {
namespace {

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;
  int n = 0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  out.n = static_cast<int>(xs.size());
  if (out.n == 0) return out;
  double mean = 0.0;
  double m2 = 0.0;
  int n = 0;
  for (double x : xs) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  out.mean = mean;
  out.std_dev = n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0;
  return out;
}

MacroResult run_macro(const AlgorithmSpec& spec, const StochasticObjective& model,
                      const DecisionSpace& space, int macro_index,
                      std::uint64_t macro_seed) {
  MacroResult out;
  out.macro_index = macro_index;
  TesoConfig config = apply_variant(spec);
  config.base_seed = macro_seed;

  const auto start = std::chrono::steady_clock::now();
  try {
    OptimizationResult res =
        spec.variant == AlgorithmVariant::Prs
            ? run_prs(config, model, space, RngStream(config.base_seed))
            : run(config, model, space);
    out.final_best_mean = res.f_best;
    out.final_best_x = std::move(res.x_best);
    out.avg_last_50 = average_last_evaluated(res.trace);
    out.best_so_far.reserve(res.trace.size());
    for (const TrialRecord& rec : res.trace) {
      out.best_so_far.push_back(rec.best_so_far);
    }
  } catch (const std::exception& e) {
    out.failed = true;
    out.error = e.what();
  }
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace

std::string variant_name(AlgorithmVariant variant) {
  switch (variant) {
    case AlgorithmVariant::Prs: return "PRS";
    case AlgorithmVariant::TesoNoElite: return "TESO-noElite";
    case AlgorithmVariant::TesoNoTabu: return "TESO-noTabu";
    case AlgorithmVariant::TesoFull: return "TESO";
  }
  throw std::invalid_argument("variant_name: unknown variant");
}

AlgorithmVariant parse_variant(const std::string& name) {
  if (name == "PRS") return AlgorithmVariant::Prs;
  if (name == "TESO-noElite") return AlgorithmVariant::TesoNoElite;
  if (name == "TESO-noTabu") return AlgorithmVariant::TesoNoTabu;
  if (name == "TESO") return AlgorithmVariant::TesoFull;
  throw std::invalid_argument("unknown algorithm name: " + name);
}

TesoConfig apply_variant(const AlgorithmSpec& spec) {
  TesoConfig config = spec.config;
  switch (spec.variant) {
    case AlgorithmVariant::TesoNoTabu:
      config.disable_tabu = true;
      break;
    case AlgorithmVariant::TesoNoElite:
      config.disable_elite = true;
      break;
    case AlgorithmVariant::Prs:
    case AlgorithmVariant::TesoFull:
      break;
  }
  return config;
}

OptimizationResult run_prs(const TesoConfig& config,
                           const StochasticObjective& model,
                           const DecisionSpace& space, RngStream stream) {
  validate(config);

  OptimizationResult result;
  result.f_best = config.direction == Direction::Minimize
                      ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  result.trace.reserve(static_cast<std::size_t>(config.T));

  for (int t = 1; t <= config.T; ++t) {
    RngStream trial = stream.child(static_cast<std::uint64_t>(t));
    RngStream gen = trial.child(0);
    RngStream eval = trial.child(1);

    Candidate x = random_candidate(space, gen);
    const Evaluation ev = evaluate(model, x, config.n_rep, eval);
    if (is_improvement(ev.mean, result.f_best, config.direction)) {
      result.f_best = ev.mean;
      result.x_best = x;
    }

    TrialRecord rec;
    rec.t = t;
    rec.candidate = std::move(x);
    rec.status = TrialStatus::Evaluated;
    rec.mean = ev.mean;
    rec.std_dev = ev.std_dev;
    rec.best_so_far = result.f_best;
    rec.eta = 0.0;  // no perturbation schedule in play
    rec.mode = TrialMode::Diversify;
    result.trace.push_back(std::move(rec));
  }

  result.trials_used = config.T;
  result.evaluations_used = config.T;
  result.terminated_early = false;
  return result;
}

double average_last_evaluated(const std::vector<TrialRecord>& trace,
                              int window) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  double sum = 0.0;
  int count = 0;
  for (auto it = trace.rbegin(); it != trace.rend() && count < window; ++it) {
    if (!it->mean) continue;
    sum += *it->mean;
    ++count;
  }
  return count > 0 ? sum / count : 0.0;
}

std::vector<CurvePoint> convergence_curve(const std::vector<MacroResult>& results,
                                          int T) {
  std::vector<const MacroResult*> ok;
  for (const MacroResult& r : results) {
    if (!r.failed && !r.best_so_far.empty()) ok.push_back(&r);
  }
  if (ok.empty()) {
    throw std::invalid_argument("convergence_curve: no completed macros");
  }

  std::vector<CurvePoint> curve(static_cast<std::size_t>(T));
  std::vector<double> column(ok.size());
  for (int t = 1; t <= T; ++t) {
    for (std::size_t m = 0; m < ok.size(); ++m) {
      const auto& trace = ok[m]->best_so_far;
      const std::size_t idx = static_cast<std::size_t>(t) - 1;
      column[m] = idx < trace.size() ? trace[idx] : trace.back();
    }
    const MeanStd ms = mean_std(column);
    auto& point = curve[static_cast<std::size_t>(t) - 1];
    point.t = t;
    point.mean_best = ms.mean;
    point.se = ms.n > 1 ? ms.std_dev / std::sqrt(static_cast<double>(ms.n)) : 0.0;
  }
  return curve;
}

SuiteSummary run_suite(const std::vector<AlgorithmSpec>& specs,
                       const StochasticObjective& model,
                       const DecisionSpace& space, int n_macro,
                       std::uint64_t base_seed, int jobs) {
  if (n_macro < 1) throw std::invalid_argument("run_suite: n_macro must be >= 1");
  if (specs.empty()) throw std::invalid_argument("run_suite: no algorithms");

  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }

  // One macro-replication seed per index, shared by every algorithm:
  // common random numbers across the comparison.
  std::vector<std::uint64_t> macro_seeds(static_cast<std::size_t>(n_macro));
  for (int m = 0; m < n_macro; ++m) {
    macro_seeds[static_cast<std::size_t>(m)] =
        derive_seed(base_seed, static_cast<std::uint64_t>(m));
  }

  SuiteSummary summary;
  summary.base_seed = base_seed;
  summary.n_macro = n_macro;

  for (const AlgorithmSpec& spec : specs) {
    AlgorithmSummary alg;
    alg.variant = spec.variant;
    alg.name = variant_name(spec.variant);
    alg.n_macro = n_macro;
    alg.macros.resize(static_cast<std::size_t>(n_macro));

    const int workers = std::min(jobs, n_macro);
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int m = next.fetch_add(1);
        if (m >= n_macro) break;
        alg.macros[static_cast<std::size_t>(m)] = run_macro(
            spec, model, space, m, macro_seeds[static_cast<std::size_t>(m)]);
      }
    };
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    std::vector<double> finals;
    std::vector<double> lasts;
    double wall = 0.0;
    for (const MacroResult& r : alg.macros) {
      if (r.failed) continue;
      finals.push_back(r.final_best_mean);
      lasts.push_back(r.avg_last_50);
      wall += r.wall_time_seconds;
    }
    alg.n_completed = static_cast<int>(finals.size());
    const MeanStd fs = mean_std(finals);
    const MeanStd ls = mean_std(lasts);
    alg.final_best_mean = fs.mean;
    alg.final_best_std = fs.std_dev;
    alg.avg_last_50_mean = ls.mean;
    alg.avg_last_50_std = ls.std_dev;
    alg.mean_wall_seconds = alg.n_completed > 0 ? wall / alg.n_completed : 0.0;
    if (alg.n_completed > 0) {
      alg.curve = convergence_curve(alg.macros, spec.config.T);
    }
    summary.algorithms.push_back(std::move(alg));
  }
  return summary;
}

}  // namespace teso
