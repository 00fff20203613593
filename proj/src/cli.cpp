#include "teso/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "teso/bench.hpp"
#include "teso/csv.hpp"
#include "teso/mmk.hpp"

namespace teso {
namespace {

std::string join_x(const Candidate& c) {
  std::string out;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    if (i > 0) out += ';';
    out += format_full(c.x[i]);
  }
  return out;
}

std::filesystem::path prepare_output_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
  return path;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << body;
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace

ExperimentConfig resolve_config(const CommonOptions& common) {
  ExperimentConfig config = common.config_path.empty()
                                ? ExperimentConfig{}
                                : load_config(common.config_path);
  for (const std::string& assignment : common.overrides) {
    apply_override(config, assignment);
  }
  if (common.seed) {
    config.suite.base_seed = *common.seed;
    config.teso.base_seed = *common.seed;
  }
  if (common.out_dir) config.suite.output_dir = *common.out_dir;
  if (common.wait_mode) {
    apply_override(config, "queue.wait_mode=" + *common.wait_mode);
  }
  validate(config);
  return config;
}

int cmd_optimize(const OptimizeOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const ExperimentConfig config = resolve_config(options.common);
    out << "base_seed = " << config.suite.base_seed << "\n";

    QueueObjective model(config.queue);
    const OptimizationResult result = run(config.teso, model);

    out << "x_best = " << join_x(result.x_best) << "\n"
        << "f_best = " << format_full(result.f_best) << "\n"
        << "trials_used = " << result.trials_used << "\n"
        << "evaluations_used = " << result.evaluations_used << "\n"
        << "terminated_early = " << (result.terminated_early ? "true" : "false")
        << "\n";

    const auto dir = prepare_output_dir(config.suite.output_dir);
    std::ostringstream csv;
    write_trace_csv(csv, result.trace);
    const auto trace_path = dir / "trace.csv";
    write_file(trace_path, csv.str());
    out << "trace written to " << trace_path.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_bench(const BenchOptions& options, std::ostream& out,
              std::ostream& err) {
  try {
    const ExperimentConfig config = resolve_config(options.common);
    out << "base_seed = " << config.suite.base_seed << "\n"
        << "n_macro = " << config.suite.n_macro << "\n";

    std::vector<AlgorithmSpec> specs;
    specs.reserve(config.suite.algorithms.size());
    for (AlgorithmVariant variant : config.suite.algorithms) {
      specs.push_back(AlgorithmSpec{variant, config.teso});
    }

    QueueObjective model(config.queue);
    const SuiteSummary summary =
        run_suite(specs, model, model.space(), config.suite.n_macro,
                  config.suite.base_seed, options.jobs);

    const auto dir = prepare_output_dir(config.suite.output_dir);
    std::ostringstream text;
    write_summary_text(text, summary);
    write_file(dir / "summary.txt", text.str());
    out << text.str();

    for (const AlgorithmSummary& alg : summary.algorithms) {
      std::ostringstream csv;
      write_curve_csv(csv, alg.curve);
      const auto curve_path = dir / ("curve_" + alg.name + ".csv");
      write_file(curve_path, csv.str());
    }
    out << "outputs written to " << dir.string() << "\n";

    for (const AlgorithmSummary& alg : summary.algorithms) {
      if (alg.n_completed == 0) {
        err << "error: every macro-replication of " << alg.name << " failed\n";
        return 1;
      }
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_oracle(const OracleOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    QueueModel model;
    model.lambda = options.lambda;
    model.k = options.k;
    model.cost_c = options.cost_c;
    model.mu_lower = options.mu_lower;
    model.mu_upper = options.mu_upper;
    if (options.wait_mode == "queue") {
      model.wait_mode = WaitMode::QueueWait;
    } else if (options.wait_mode == "sojourn") {
      model.wait_mode = WaitMode::Sojourn;
    } else {
      throw std::invalid_argument("wait mode must be 'queue' or 'sojourn'");
    }
    if (!(options.step > 0.0)) {
      throw std::invalid_argument("step must be positive");
    }
    validate(model);  // rejects a range touching instability

    out << "mu,J\n";
    double best_mu = model.mu_lower;
    double best_j = std::numeric_limits<double>::infinity();
    const int steps =
        static_cast<int>((model.mu_upper - model.mu_lower) / options.step + 0.5);
    for (int i = 0; i <= steps; ++i) {
      const double mu =
          std::min(model.mu_lower + i * options.step, model.mu_upper);
      const double j = analytic_objective(model, mu);
      out << format_full(mu) << ',' << format_full(j) << '\n';
      if (j < best_j) {
        best_j = j;
        best_mu = mu;
      }
    }
    out << "argmin mu = " << format_full(best_mu) << "\n"
        << "min J = " << format_full(best_j) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const ExperimentConfig config = resolve_config(options.common);
    const QueueModel& model = config.queue;
    const double mu = options.mu;
    if (!(mu >= model.mu_lower && mu <= model.mu_upper)) {
      throw std::invalid_argument("mu outside [mu_lower, mu_upper]");
    }
    const int reps = options.reps > 0 ? options.reps : config.teso.n_rep;

    out << "base_seed = " << config.suite.base_seed << "\n"
        << "mu = " << format_full(mu) << ", reps = " << reps << "\n";

    QueueObjective objective(model);
    const Candidate x{{mu}};
    const Evaluation ev =
        evaluate(objective, x, reps, RngStream(config.suite.base_seed));
    const double se = ev.std_dev / std::sqrt(static_cast<double>(reps));

    out << "simulated objective mean = " << format_sig6(ev.mean) << " (std "
        << format_sig6(ev.std_dev) << ", se " << format_sig6(se) << ")\n"
        << "analytic objective = " << format_sig6(analytic_objective(model, mu))
        << "\n"
        << "analytic mean queue wait = " << format_sig6(analytic_wq(model, mu))
        << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Simulation-optimization toolkit: tabu/elite-memory search over noisy "
      "objectives, with an M/M/k queue test problem and analytic oracle"};
  app.require_subcommand(1);

  OptimizeOptions optimize;
  BenchOptions bench;
  OracleOptions oracle;
  SimulateOptions simulate;

  auto add_common = [](CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--config", common.config_path,
                    "configuration file (defaults used when omitted)");
    cmd->add_option("--set", common.overrides,
                    "override, section.key=value (repeatable)");
    cmd->add_option("--seed", common.seed, "base seed for all randomness");
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_option("--wait-mode", common.wait_mode,
                    "waiting metric: queue | sojourn")
        ->check(CLI::IsMember({"queue", "sojourn"}));
  };

  auto* opt_cmd =
      app.add_subcommand("optimize", "run one optimization, write its trace");
  add_common(opt_cmd, optimize.common);

  auto* bench_cmd = app.add_subcommand(
      "bench", "run the full algorithm comparison suite");
  add_common(bench_cmd, bench.common);
  bench_cmd->add_option("--jobs", bench.jobs,
                        "parallel macro-replications (0 = all cores)");

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "print the analytic objective over a mu grid");
  oracle_cmd->add_option("--lambda", oracle.lambda, "arrival rate");
  oracle_cmd->add_option("--k", oracle.k, "number of servers");
  oracle_cmd->add_option("--cost-c", oracle.cost_c, "cost coefficient");
  oracle_cmd->add_option("--mu-lower", oracle.mu_lower, "grid lower bound");
  oracle_cmd->add_option("--mu-upper", oracle.mu_upper, "grid upper bound");
  oracle_cmd->add_option("--step", oracle.step, "grid step");
  oracle_cmd->add_option("--wait-mode", oracle.wait_mode,
                         "waiting metric: queue | sojourn")
      ->check(CLI::IsMember({"queue", "sojourn"}));

  auto* sim_cmd = app.add_subcommand(
      "simulate", "replicate the simulator at one mu and compare to the oracle");
  add_common(sim_cmd, simulate.common);
  sim_cmd->add_option("--mu", simulate.mu, "service rate to simulate")
      ->required();
  sim_cmd->add_option("--reps", simulate.reps,
                      "replications (default: configured n_rep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (opt_cmd->parsed()) return cmd_optimize(optimize, std::cout, std::cerr);
  if (bench_cmd->parsed()) return cmd_bench(bench, std::cout, std::cerr);
  if (oracle_cmd->parsed()) return cmd_oracle(oracle, std::cout, std::cerr);
  if (sim_cmd->parsed()) return cmd_simulate(simulate, std::cout, std::cerr);
  return 1;
}

}  // namespace teso
