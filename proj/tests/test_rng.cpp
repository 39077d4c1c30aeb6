#include "ersl/rng.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "doctest.h"

using namespace ersl;

TEST_CASE("mix64 is a bijection-quality scrambler on nearby inputs") {
  // avalanche spot check: flipping one input bit moves ~half the output bits
  for (std::uint64_t x : {1ull, 42ull, 0xDEADBEEFull, (1ull << 63) + 7}) {
    int flipped = std::popcount(mix64(x) ^ mix64(x ^ 1));
    CHECK(flipped >= 10);
    CHECK(flipped <= 54);
  }
  CHECK(mix64(17) == mix64(17));
  CHECK(mix64(17) != mix64(18));
}

TEST_CASE("seed_for separates replicates, sizes, and roles") {
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t rep = 0; rep < 1000; ++rep)
    for (std::uint64_t n = 0; n < 500; ++n)
      seen.insert(seed_for(7, rep, n, role::generate));
  for (std::uint64_t rep = 0; rep < 1000; ++rep)
    for (std::uint64_t n = 0; n < 500; ++n)
      seen.insert(seed_for(7, rep, n, role::walk_batch));
  CHECK(seen.size() == 1000000);
  CHECK(seed_for(7, 0, 64, role::generate) !=
        seed_for(8, 0, 64, role::generate));
}

TEST_CASE("u01 stays in the half-open unit interval") {
  CHECK(u01(0) == doctest::Approx(0.0));
  CHECK(u01(~0ull) < 1.0);
  for (std::uint64_t k = 1; k <= 1000; ++k) {
    double u = u01(mix64(k));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("hash3 is deterministic and argument-sensitive") {
  CHECK(hash3(1, 2, 3, 4) == hash3(1, 2, 3, 4));
  CHECK(hash3(1, 2, 3, 4) != hash3(1, 2, 4, 3));
  CHECK(hash2(5, role::x_badness, 0) != hash2(5, role::y_badness, 0));
}

TEST_CASE("stateful stream: below() respects the bound and hits every value") {
  Rng rng(12345);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) {
    std::uint64_t r = rng.below(7);
    REQUIRE(r < 7);
    ++counts[static_cast<int>(r)];
  }
  for (int c : counts) {
    CHECK(c > 800);  // expected 1000 each
    CHECK(c < 1200);
  }
}

TEST_CASE("stateful stream: exponential mean") {
  Rng rng(999);
  const int m = 100000;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += rng.exponential(2.0);
  // mean 1/2, sd 1/2, so 3 standard errors is ~0.0047
  CHECK(sum / m == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("stateful stream: uniform01 moments") {
  Rng rng(31337);
  const int m = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < m; ++i) {
    double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  CHECK(sum / m == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sumsq / m == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("identical seeds replay identical streams") {
  Rng a(2024), b(2024);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
}
