#pragma once

#include <memory>
#include <stdexcept>

#include "teso/objective.hpp"
#include "teso/rng.hpp"

namespace teso {

// Queue configuration violates k * mu > lambda.
class StabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class WaitMode { QueueWait, Sojourn };

// M/M/k test problem: Poisson arrivals at rate lambda, k identical
// exponential servers whose common rate mu is the decision variable, FIFO,
// infinite buffer. Objective adds a quadratic capacity cost per server.
struct QueueModel {
  double lambda = 2.5;  // arrival rate, customers per unit time
  int k = 3;            // number of servers
  double cost_c = 0.5;  // cost coefficient applied per server
  double mu_lower = 1.0;
  double mu_upper = 4.0;
  int customers_per_rep = 2000;  // delays averaged per replication
  int warmup_customers = 500;    // discarded before averaging
  WaitMode wait_mode = WaitMode::QueueWait;

  [[nodiscard]] DecisionSpace decision_space() const {
    return DecisionSpace{mu_lower, mu_upper, 1};
  }

  bool operator==(const QueueModel&) const = default;
};

// Throws std::invalid_argument / StabilityError when the model is malformed
// or unstable somewhere in [mu_lower, mu_upper].
void validate(const QueueModel& model);

// One replication of the FIFO M/M/k queue, via the ordered-workload
// recursion: arrival n sees delay D_n = w[0]; then w[0] += service,
// every coordinate decreases by the next interarrival (floored at 0) and the
// vector is re-sorted. Returns the mean of customers_per_rep delay values
// after warmup (QueueWait) or delay-plus-service values (Sojourn).
// Interarrival and service times draw from separate child streams.
double simulate_wait(const QueueModel& model, double mu, RngStream stream);

// simulate_wait(...) + cost_c * k * mu^2, one noisy draw of the objective.
double objective_sample(const QueueModel& model, double mu, RngStream stream);

// Steady-state probability that an arrival waits, offered load a = lambda/mu.
// Computed through the Erlang-B recurrence, algebraically identical to
// a^k/(k!(1-rho)) / [sum_{n<k} a^n/n! + a^k/(k!(1-rho))].
double erlang_c(int k, double offered_load);

// Closed-form mean queueing delay Wq = C(k, a) / (k*mu - lambda).
double analytic_wq(const QueueModel& model, double mu);

// Closed-form objective used as validation oracle and zero-noise test
// problem; Sojourn mode adds the 1/mu service time.
double analytic_objective(const QueueModel& model, double mu);

// The queue problem as a stochastic black-box objective (x = [mu]).
class QueueObjective final : public StochasticObjective {
 public:
  explicit QueueObjective(QueueModel model)
      : model_(model), space_(model.decision_space()) {}

  [[nodiscard]] const DecisionSpace& space() const override { return space_; }
  [[nodiscard]] const QueueModel& model() const { return model_; }

 private:
  double draw(const Candidate& x, RngStream& stream) const override {
    return objective_sample(model_, x.x.front(), stream);
  }

  QueueModel model_;
  DecisionSpace space_;
};

// Zero-noise variant evaluating the closed form; same decision space.
class AnalyticQueueObjective final : public StochasticObjective {
 public:
  explicit AnalyticQueueObjective(QueueModel model)
      : model_(model), space_(model.decision_space()) {}

  [[nodiscard]] const DecisionSpace& space() const override { return space_; }

 private:
  double draw(const Candidate& x, RngStream&) const override {
    return analytic_objective(model_, x.x.front());
  }

  QueueModel model_;
  DecisionSpace space_;
};

}  // namespace teso
