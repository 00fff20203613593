#include "teso/mmk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace teso {

void validate(const QueueModel& model) {
  if (!(model.lambda > 0.0)) {
    throw std::invalid_argument("queue model: lambda must be positive");
  }
  if (model.k < 1) {
    throw std::invalid_argument("queue model: k must be at least 1");
  }
  if (!(model.cost_c >= 0.0)) {
    throw std::invalid_argument("queue model: cost_c must be non-negative");
  }
  if (!(model.mu_lower > 0.0) || !(model.mu_upper > model.mu_lower)) {
    throw std::invalid_argument(
        "queue model: require 0 < mu_lower < mu_upper");
  }
  if (model.customers_per_rep < 1) {
    throw std::invalid_argument(
        "queue model: customers_per_rep must be at least 1");
  }
  if (model.warmup_customers < 0) {
    throw std::invalid_argument(
        "queue model: warmup_customers must be non-negative");
  }
  // Wq grows without bound as mu approaches lambda/k, so the whole decision
  // range must satisfy the stability condition k * mu > lambda.
  if (!(static_cast<double>(model.k) * model.mu_lower > model.lambda)) {
    throw StabilityError(
        "queue model unstable: stability requires k * mu > lambda, violated "
        "at mu_lower = " +
        std::to_string(model.mu_lower));
  }
}

double simulate_wait(const QueueModel& model, double mu, RngStream stream) {
  RngStream arrivals = stream.child(0);
  RngStream services = stream.child(1);

  const int k = model.k;
  const int total = model.warmup_customers + model.customers_per_rep;
  std::vector<double> w(static_cast<std::size_t>(k), 0.0);  // ascending

  double sum = 0.0;
  for (int n = 0; n < total; ++n) {
    const double service = services.exponential(mu);
    const double gap = arrivals.exponential(model.lambda);

    const double delay = w[0];
    if (n >= model.warmup_customers) {
      sum += (model.wait_mode == WaitMode::Sojourn) ? delay + service : delay;
    }

    // Customer joins the least-loaded server; only w[0] can be out of
    // place afterwards, so one insertion pass restores ascending order.
    double v = w[0] + service;
    int i = 0;
    while (i + 1 < k && w[static_cast<std::size_t>(i) + 1] < v) {
      w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i) + 1];
      ++i;
    }
    w[static_cast<std::size_t>(i)] = v;

    // Advance to the next arrival epoch.
    for (double& wi : w) wi = std::max(0.0, wi - gap);
  }
  return sum / static_cast<double>(model.customers_per_rep);
}

double objective_sample(const QueueModel& model, double mu, RngStream stream) {
  const double cost =
      model.cost_c * static_cast<double>(model.k) * mu * mu;
  return simulate_wait(model, mu, std::move(stream)) + cost;
}

double erlang_c(int k, double offered_load) {
  if (k < 1) {
    throw std::invalid_argument("erlang_c: k must be at least 1");
  }
  if (!(offered_load > 0.0)) {
    throw std::invalid_argument("erlang_c: offered load must be positive");
  }
  const double rho = offered_load / static_cast<double>(k);
  if (!(rho < 1.0)) {
    throw StabilityError(
        "erlang_c: utilisation at or above 1, stability requires k * mu > "
        "lambda");
  }
  // Erlang-B recurrence B(n) = a B(n-1) / (n + a B(n-1)), B(0) = 1; then
  // C = B / (1 - rho (1 - B)). Numerically stable for large k, no factorials.
  double b = 1.0;
  for (int n = 1; n <= k; ++n) {
    b = offered_load * b / (static_cast<double>(n) + offered_load * b);
  }
  return b / (1.0 - rho * (1.0 - b));
}

double analytic_wq(const QueueModel& model, double mu) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("analytic_wq: mu must be positive");
  }
  const double k = static_cast<double>(model.k);
  if (!(k * mu > model.lambda)) {
    throw StabilityError(
        "analytic_wq: unstable queue, stability requires k * mu > lambda");
  }
  const double c = erlang_c(model.k, model.lambda / mu);
  return c / (k * mu - model.lambda);
}

double analytic_objective(const QueueModel& model, double mu) {
  double wait = analytic_wq(model, mu);
  if (model.wait_mode == WaitMode::Sojourn) wait += 1.0 / mu;
  return wait + model.cost_c * static_cast<double>(model.k) * mu * mu;
}

}  // namespace teso
