#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teso/rng.hpp"

namespace teso {

enum class Direction { Minimize, Maximize };

// Box-constrained feasible set; all coordinates share the same bounds.
struct DecisionSpace {
  double lower = 0.0;
  double upper = 1.0;
  int dimension = 1;

  [[nodiscard]] double range() const { return upper - lower; }
  [[nodiscard]] bool contains(std::span<const double> x) const;
};

// A point in decision space.
struct Candidate {
  std::vector<double> x;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Replicated-sample statistics for one candidate.
struct Evaluation {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation, n-1 divisor; 0 when n_rep == 1
  int n_rep = 0;
  std::optional<std::vector<double>> samples;  // retained only on request
};

// Stochastic black-box objective: one simulation run per sample() call.
// Implementations must be free of mutable shared state; all randomness flows
// through the supplied stream, so a model can be shared across threads.
class StochasticObjective {
 public:
  virtual ~StochasticObjective() = default;

  [[nodiscard]] virtual const DecisionSpace& space() const = 0;

  // One noisy draw of the performance measure. Independent streams give
  // independent, identically distributed draws for fixed x.
  // Throws std::domain_error when x is out of bounds.
  double sample(const Candidate& x, RngStream& stream) const;

 private:
  virtual double draw(const Candidate& x, RngStream& stream) const = 0;
};

// Deterministic objective wrapping a plain function; zero noise.
class FunctionObjective final : public StochasticObjective {
 public:
  FunctionObjective(DecisionSpace space, std::function<double(const Candidate&)> fn)
      : space_(space), fn_(std::move(fn)) {}

  [[nodiscard]] const DecisionSpace& space() const override { return space_; }

 private:
  double draw(const Candidate& x, RngStream&) const override { return fn_(x); }

  DecisionSpace space_;
  std::function<double(const Candidate&)> fn_;
};

// Replications first..first+count-1 of the model at x. Replication j draws
// from stream.child(j), so any subset can be computed in any order and the
// union is identical to a single serial pass.
std::vector<double> draw_samples(const StochasticObjective& model, const Candidate& x,
                                 int first, int count, RngStream stream);

// Welford summary of an ordered sample list. Exact for constant samples:
// mean == the constant, std_dev == 0.
Evaluation summarize(std::span<const double> samples, bool keep_samples = false);

// Mean/std over n_rep replications, each on its own child stream.
Evaluation evaluate(const StochasticObjective& model, const Candidate& x, int n_rep,
                    RngStream stream, bool keep_samples = false);

}  // namespace teso
