#include "teso/objective.hpp"

#include <cstddef>
#include <stdexcept>

namespace teso {

bool DecisionSpace::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension) return false;
  for (const double xi : x) {
    if (!(xi >= lower && xi <= upper)) return false;  // also rejects NaN
  }
  return true;
}

double StochasticObjective::sample(const Candidate& x, RngStream& stream) const {
  if (!space().contains(x.x)) {
    throw std::domain_error("candidate outside decision space bounds");
  }
  return draw(x, stream);
}

std::vector<double> draw_samples(const StochasticObjective& model, const Candidate& x,
                                 int first, int count, RngStream stream) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int j = first; j < first + count; ++j) {
    RngStream rep = stream.child(static_cast<std::uint64_t>(j));
    samples.push_back(model.sample(x, rep));
  }
  return samples;
}

Evaluation summarize(std::span<const double> samples, bool keep_samples) {
  if (samples.empty()) throw std::invalid_argument("summarize: no samples");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (const double s : samples) {
    ++n;
    const double delta = s - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (s - mean);
  }
  Evaluation ev;
  ev.mean = mean;
  ev.std_dev = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
  ev.n_rep = static_cast<int>(n);
  if (keep_samples) ev.samples.emplace(samples.begin(), samples.end());
  return ev;
}

Evaluation evaluate(const StochasticObjective& model, const Candidate& x, int n_rep,
                    RngStream stream, bool keep_samples) {
  if (n_rep < 1) throw std::invalid_argument("evaluate: n_rep must be >= 1");
  const std::vector<double> samples = draw_samples(model, x, 0, n_rep, stream);
  return summarize(samples, keep_samples);
}

}  // namespace teso
