#include "ersl/layers.hpp"

#include <cmath>
#include <cstdint>
#include <map>

#include "doctest.h"
#include "ersl/params.hpp"

using namespace ersl;

namespace {

ModelParams reference_params() {
  ModelParams mp;
  mp.p = 0.65;
  mp.q = 0.3;
  mp.sigma = 0.25;
  mp.L = 2;
  return mp;
}

void check_tiling(const LayerSequence& seq, std::int64_t n) {
  REQUIRE(!seq.layers.empty());
  CHECK(seq.covered_lo() <= -1);
  CHECK(seq.covered_hi() >= n + 1);  // covers edge positions [-1, n]
  for (std::size_t i = 0; i + 1 < seq.layers.size(); ++i)
    CHECK(seq.layers[i + 1].start ==
          seq.layers[i].start + seq.layers[i].width);
  const Layer& origin = seq.layers[static_cast<std::size_t>(seq.origin_index)];
  CHECK(origin.start <= 0);
  CHECK(origin.start + origin.width > 0);
  CHECK(origin.start == -seq.origin_offset);
}

}  // namespace

TEST_CASE("elongated law reproduces the width map") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  CHECK(law.width(0) == 1);
  CHECK(law.width(1) == 3);
  CHECK(law.width(5) == 92);
  CHECK(law.width(10) == 8349);
}

TEST_CASE("layer sequences tile the window for many seeds") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    LayerSequence seq = build_layer_sequence(law, 50, 0, seed);
    check_tiling(seq, 50);
    for (std::int64_t pos = -1; pos <= 50; ++pos) {
      const Layer& layer = seq.at(pos);
      CHECK(layer.start <= pos);
      CHECK(pos < layer.start + layer.width);
    }
  }
}

TEST_CASE("index_of rejects uncovered positions") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  LayerSequence seq = build_layer_sequence(law, 20, 0, 3);
  CHECK_THROWS_AS(seq.index_of(seq.covered_lo() - 1), Error);
  CHECK_THROWS_AS(seq.index_of(seq.covered_hi()), Error);
}

TEST_CASE("same seed gives the same sequence, axes differ") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  LayerSequence a = build_layer_sequence(law, 40, 0, 99);
  LayerSequence b = build_layer_sequence(law, 40, 0, 99);
  REQUIRE(a.layers.size() == b.layers.size());
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    CHECK(a.layers[i].badness == b.layers[i].badness);
    CHECK(a.layers[i].start == b.layers[i].start);
  }
  LayerSequence y = build_layer_sequence(law, 40, 1, 99);
  bool any_diff = y.layers.size() != a.layers.size();
  for (std::size_t i = 0; !any_diff && i < a.layers.size(); ++i)
    any_diff = a.layers[i].badness != y.layers[i].badness;
  CHECK(any_diff);
}

TEST_CASE("enlarging the window never rewrites visible layers") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    LayerSequence small = build_layer_sequence(law, 20, 0, seed);
    LayerSequence big = build_layer_sequence(law, 60, 0, seed);
    std::map<std::int64_t, Layer> by_global;
    for (std::size_t i = 0; i < big.layers.size(); ++i)
      by_global[big.global_index(static_cast<std::int64_t>(i))] =
          big.layers[i];
    for (std::size_t i = 0; i < small.layers.size(); ++i) {
      auto it = by_global.find(small.global_index(static_cast<std::int64_t>(i)));
      REQUIRE(it != by_global.end());
      CHECK(it->second.badness == small.layers[i].badness);
      CHECK(it->second.width == small.layers[i].width);
      CHECK(it->second.start == small.layers[i].start);
    }
  }
}

TEST_CASE("origin badness follows the size-biased law") {
  LayerLaw law = LayerLaw::elongated(reference_params());
  const std::uint64_t m = 10000;
  std::map<std::int64_t, int> counts;
  for (std::uint64_t seed = 0; seed < m; ++seed) {
    LayerSequence seq = build_layer_sequence(law, 10, 0, seed);
    ++counts[seq.layers[static_cast<std::size_t>(seq.origin_index)].badness];
  }
  const ModelParams mp = reference_params();
  for (std::int64_t ell = 1; ell <= 4; ++ell) {
    double expected = size_biased_pmf(ell, mp);
    double se = std::sqrt(expected * (1.0 - expected) / m);
    double freq = static_cast<double>(counts[ell]) / m;
    CHECK(std::abs(freq - expected) <= 3.5 * se);
  }
}

TEST_CASE("unit law collapses the origin back to the plain pmf") {
  const ModelParams mp = reference_params();
  LayerLaw law = LayerLaw::unit(mp);
  const std::uint64_t m = 10000;
  int ones = 0;
  for (std::uint64_t seed = 0; seed < m; ++seed) {
    LayerSequence seq = build_layer_sequence(law, 10, 0, seed);
    const Layer& origin = seq.layers[static_cast<std::size_t>(seq.origin_index)];
    CHECK(origin.width == 1);
    CHECK(origin.start == 0);  // width-1 origin leaves no room for an offset
    ones += origin.badness == 1;
  }
  double freq = static_cast<double>(ones) / m;
  double se = std::sqrt(0.7 * 0.3 / m);
  CHECK(std::abs(freq - 0.7) <= 3.5 * se);
}

TEST_CASE("constant law pins the badness but keeps the offset uniform") {
  const ModelParams mp = reference_params();
  LayerLaw law = LayerLaw::constant(5, mp);
  CHECK(law.width(5) == 92);
  std::map<std::int64_t, int> offsets;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LayerSequence seq = build_layer_sequence(law, 30, 0, seed);
    check_tiling(seq, 30);
    for (const Layer& layer : seq.layers) {
      CHECK(layer.badness == 5);
      CHECK(layer.width == 92);
    }
    ++offsets[seq.origin_offset];
  }
  CHECK(offsets.size() > 40);  // offsets spread over [0, 92)
  for (const auto& [off, _] : offsets) {
    CHECK(off >= 0);
    CHECK(off < 92);
  }
}

TEST_CASE("giant layers cover the whole window from a huge origin") {
  const ModelParams mp = reference_params();
  LayerLaw law = LayerLaw::constant(45, mp);  // width ~ 4e17 > 2^53
  CHECK(law.width(45) == kGiantWidth);
  LayerSequence seq = build_layer_sequence(law, 100, 0, 7);
  REQUIRE(seq.layers.size() == 1);
  CHECK(seq.layers[0].start == -(kGiantWidth / 2));
  CHECK(seq.covered_hi() > 100);
  CHECK(seq.at(50).badness == 45);
}
