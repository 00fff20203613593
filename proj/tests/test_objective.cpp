#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "teso/objective.hpp"

using namespace teso;

namespace {

// Gaussian noise around a known mean; exercises the statistical paths.
class NoisyConstant final : public StochasticObjective {
 public:
  NoisyConstant(DecisionSpace space, double mean, double noise)
      : space_(space), mean_(mean), noise_(noise) {}

  const DecisionSpace& space() const override { return space_; }

 private:
  double draw(const Candidate&, RngStream& stream) const override {
    return stream.normal(mean_, noise_);
  }

  DecisionSpace space_;
  double mean_;
  double noise_;
};

const DecisionSpace kUnit{0.0, 4.0, 1};

}  // namespace

TEST_CASE("zero-noise sample returns the function value") {
  FunctionObjective square(kUnit, [](const Candidate& c) { return c.x[0] * c.x[0]; });
  RngStream s(1);
  REQUIRE(square.sample(Candidate{{2.0}}, s) == 4.0);
}

TEST_CASE("out-of-bounds candidates are rejected") {
  FunctionObjective f(kUnit, [](const Candidate&) { return 0.0; });
  RngStream s(1);
  REQUIRE_THROWS_AS(f.sample(Candidate{{4.5}}, s), std::domain_error);
  REQUIRE_THROWS_AS(f.sample(Candidate{{-0.1}}, s), std::domain_error);
  REQUIRE_THROWS_AS(f.sample(Candidate{{std::nan("")}}, s), std::domain_error);
  REQUIRE_THROWS_AS(f.sample(Candidate{{1.0, 1.0}}, s), std::domain_error);
}

TEST_CASE("replicated evaluation of a zero-noise objective is exact") {
  FunctionObjective square(kUnit, [](const Candidate& c) { return c.x[0] * c.x[0]; });
  const Evaluation ev = evaluate(square, Candidate{{3.0}}, 5, RngStream(7));
  REQUIRE(ev.mean == 9.0);     // exactly
  REQUIRE(ev.std_dev == 0.0);  // exactly
  REQUIRE(ev.n_rep == 5);
  REQUIRE_FALSE(ev.samples.has_value());
}

TEST_CASE("summarize matches hand-computed statistics") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  const Evaluation ev = summarize(xs);
  REQUIRE(ev.mean == 2.0);
  REQUIRE(ev.std_dev == 1.0);
  REQUIRE(ev.n_rep == 3);
}

TEST_CASE("summarize of an empty span throws") {
  REQUIRE_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("single replication has zero std") {
  NoisyConstant noisy(kUnit, 1.0, 0.5);
  const Evaluation ev = evaluate(noisy, Candidate{{1.0}}, 1, RngStream(3));
  REQUIRE(ev.n_rep == 1);
  REQUIRE(ev.std_dev == 0.0);
}

TEST_CASE("evaluate keeps samples on request and mean matches them") {
  NoisyConstant noisy(kUnit, 2.0, 0.3);
  const Evaluation ev = evaluate(noisy, Candidate{{1.0}}, 8, RngStream(5), true);
  REQUIRE(ev.samples.has_value());
  REQUIRE(ev.samples->size() == 8);
  double sum = 0.0;
  for (const double s : *ev.samples) sum += s;
  REQUIRE_THAT(ev.mean, Catch::Matchers::WithinULP(sum / 8.0, 4));
}

TEST_CASE("evaluate is bit-exactly reproducible") {
  NoisyConstant noisy(kUnit, 0.0, 1.0);
  const Evaluation a = evaluate(noisy, Candidate{{2.0}}, 30, RngStream(11), true);
  const Evaluation b = evaluate(noisy, Candidate{{2.0}}, 30, RngStream(11), true);
  REQUIRE(a.mean == b.mean);
  REQUIRE(a.std_dev == b.std_dev);
  REQUIRE(*a.samples == *b.samples);
}

TEST_CASE("replication substreams are independent of batching") {
  NoisyConstant noisy(kUnit, 0.0, 1.0);
  const Candidate x{{1.5}};
  const auto all = draw_samples(noisy, x, 0, 10, RngStream(13));
  auto head = draw_samples(noisy, x, 0, 4, RngStream(13));
  const auto tail = draw_samples(noisy, x, 4, 6, RngStream(13));
  head.insert(head.end(), tail.begin(), tail.end());
  REQUIRE(all == head);
}

TEST_CASE("evaluation mean converges to the true mean") {
  NoisyConstant noisy(kUnit, 3.25, 2.0);
  const Evaluation ev = evaluate(noisy, Candidate{{1.0}}, 2000, RngStream(21));
  const double se = ev.std_dev / std::sqrt(2000.0);
  REQUIRE(std::abs(ev.mean - 3.25) < 4.0 * se);
}

TEST_CASE("evaluate rejects a non-positive replication count") {
  NoisyConstant noisy(kUnit, 0.0, 1.0);
  REQUIRE_THROWS_AS(evaluate(noisy, Candidate{{1.0}}, 0, RngStream(1)),
                    std::invalid_argument);
}
