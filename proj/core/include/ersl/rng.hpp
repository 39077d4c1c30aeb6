#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ersl {

// splitmix64 finalizer: bijective on 64 bits, strong avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Stream roles. Every random quantity in a realization is keyed by
// (seed, role, indices...) so substreams never collide and a window can be
// extended without reshuffling what was already sampled.
namespace role {
inline constexpr std::uint64_t x_badness = 0xA1;
inline constexpr std::uint64_t y_badness = 0xA2;
inline constexpr std::uint64_t x_offset = 0xA3;
inline constexpr std::uint64_t y_offset = 0xA4;
inline constexpr std::uint64_t h_edge = 0xB1;
inline constexpr std::uint64_t v_edge = 0xB2;
inline constexpr std::uint64_t column_prob = 0xB3;
inline constexpr std::uint64_t generate = 0xC1;
inline constexpr std::uint64_t walker = 0xC2;
inline constexpr std::uint64_t walk_batch = 0xC3;
inline constexpr std::uint64_t annealed = 0xC4;
}  // namespace role

// Derives a per-row seed from (base, replicate, n, role). Counter-style
// mixing; distinct inputs give distinct outputs for any practical workload
// (64-bit birthday bound).
constexpr std::uint64_t seed_for(std::uint64_t base, std::uint64_t replicate,
                                 std::uint64_t n, std::uint64_t r) {
  std::uint64_t h = mix64(base ^ 0x9e3779b97f4a7c15ULL);
  h = hash_combine(h, r);
  h = hash_combine(h, replicate);
  h = hash_combine(h, n);
  return mix64(h);
}

constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t r,
                              std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = hash_combine(h, r);
  h = hash_combine(h, a);
  h = hash_combine(h, b);
  return mix64(h);
}

constexpr std::uint64_t hash2(std::uint64_t seed, std::uint64_t r,
                              std::uint64_t a) {
  return hash3(seed, r, a, 0x5851f42d4c957f2dULL);
}

// top 53 bits -> [0, 1)
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential stream. The engine is std::mt19937_64 (bit-exact output is
// pinned by the standard); all distributions are inverted by hand so results
// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }
  double uniform01() { return u01(bits()); }
  bool bernoulli(double p) { return uniform01() < p; }

  // Exp(rate); u < 1 always, so the result is finite
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

  // unbiased integer in [0, bound) via 128-bit multiply with rejection
  std::uint64_t below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(bits()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t thresh = (0ULL - bound) % bound;
      while (lo < thresh) {
        m = static_cast<u128>(bits()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ersl
