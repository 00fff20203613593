#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "teso/rng.hpp"

using teso::RngStream;

TEST_CASE("same seed reproduces the same sequence") {
  RngStream a(123);
  RngStream b(123);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different seeds give different sequences") {
  RngStream a(1);
  RngStream b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  REQUIRE(equal == 0);
}

TEST_CASE("child streams depend on the key, not on parent consumption") {
  RngStream fresh(7);
  const RngStream child_before = fresh.child(5);

  RngStream spent(7);
  for (int i = 0; i < 100; ++i) spent.next_u64();
  RngStream child_after = spent.child(5);

  RngStream lhs = child_before;
  for (int i = 0; i < 100; ++i) {
    REQUIRE(lhs.next_u64() == child_after.next_u64());
  }
}

TEST_CASE("distinct child indices give distinct streams") {
  RngStream root(99);
  RngStream c0 = root.child(0);
  RngStream c1 = root.child(1);
  REQUIRE(c0.key() != c1.key());
  REQUIRE(c0.next_u64() != c1.next_u64());
}

TEST_CASE("derive_seed matches the child key") {
  REQUIRE(teso::derive_seed(42, 3) == RngStream(42).child(3).key());
  REQUIRE(teso::derive_seed(42, 3) != teso::derive_seed(42, 4));
  REQUIRE(teso::derive_seed(42, 3) != teso::derive_seed(43, 3));
}

TEST_CASE("uniform01 stays in [0,1) with mean near one half") {
  RngStream s(2024);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // SE of the mean is 1/(sqrt(12n)) ~ 0.0009; allow 5 SE.
  REQUIRE(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("uniform maps into the requested interval") {
  RngStream s(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform(1.0, 4.0);
    REQUIRE(u >= 1.0);
    REQUIRE(u < 4.0);
  }
}

TEST_CASE("normal draws match the requested moments") {
  RngStream s(17);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal(2.0, 3.0);
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  REQUIRE(std::abs(mean - 2.0) < 0.05);            // ~7 SE
  REQUIRE(std::abs(std::sqrt(var) - 3.0) < 0.05);  // generous
}

TEST_CASE("exponential draws are non-negative with mean 1/rate") {
  RngStream s(31);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = s.exponential(2.5);
    REQUIRE(e >= 0.0);
    sum += e;
  }
  REQUIRE(std::abs(sum / n - 0.4) < 0.01);
}

TEST_CASE("uniform_index is bounded and roughly uniform") {
  RngStream s(8);
  std::array<int, 4> counts{};
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const auto idx = s.uniform_index(4);
    REQUIRE(idx < 4);
    counts[static_cast<std::size_t>(idx)]++;
  }
  for (const int c : counts) {
    // Expected 10000, SD ~87; allow 6 SD.
    REQUIRE(std::abs(c - 10000) < 550);
  }
}

TEST_CASE("stream satisfies UniformRandomBitGenerator") {
  static_assert(std::uniform_random_bit_generator<RngStream>);
  std::vector<int> v(20);
  std::iota(v.begin(), v.end(), 0);
  RngStream s(3);
  std::shuffle(v.begin(), v.end(), s);
  std::sort(v.begin(), v.end());
  for (int i = 0; i < 20; ++i) REQUIRE(v[static_cast<std::size_t>(i)] == i);
}
