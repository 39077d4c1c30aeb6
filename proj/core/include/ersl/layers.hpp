#pragma once

#include <cstdint>
#include <vector>

#include "ersl/params.hpp"
#include "ersl/rng.hpp"

namespace ersl {

// Widths at or beyond this sentinel exceed any window this library will
// generate; such a layer is treated as covering the whole window. The
// distributional error of skipping the boundary-visible case is below
// (2n+3)/2^53 per draw.
inline constexpr std::int64_t kGiantWidth = std::int64_t(1) << 62;

struct Layer {
  std::int64_t badness = 0;
  std::int64_t width = 0;  // = S(badness) for elongated laws, 1 for unit law
  std::int64_t start = 0;  // first edge position covered; covers [start, start+width)
};

// Badness/width law for one axis. elongated() is the real model; unit() keeps
// every width at 1 (plain, unstretched lattice), which also turns the
// size-biased origin law back into the plain pmf.
class LayerLaw {
 public:
  static LayerLaw elongated(const ModelParams& params);
  static LayerLaw unit(const ModelParams& params);
  // every badness equals the given value (degenerate law for tests/fixtures)
  static LayerLaw constant(std::int64_t badness, const ModelParams& params);

  std::int64_t plain_badness(std::uint64_t bits) const;
  std::int64_t origin_badness(std::uint64_t bits) const;  // size-biased by width
  std::int64_t width(std::int64_t badness) const;
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_{};
  bool unit_width_ = false;
  std::int64_t fixed_badness_ = -1;  // < 0 means not fixed
  double mean_ = 1.0;
};

// Contiguous tiling of an integer interval containing [-1, n] by layers.
// layers[i+1].start == layers[i].start + layers[i].width for all i.
struct LayerSequence {
  int axis = 0;  // 0 = x, 1 = y
  std::vector<Layer> layers;
  std::int64_t origin_index = 0;   // index into layers of the layer covering 0
  std::int64_t origin_offset = 0;  // position of coordinate 0 inside that layer
  std::int64_t first_global_index = 0;  // global index of layers.front(); origin = 0

  std::int64_t index_of(std::int64_t pos) const;  // layer covering edge position pos
  const Layer& at(std::int64_t pos) const { return layers[index_of(pos)]; }
  std::int64_t global_index(std::int64_t i) const { return first_global_index + i; }
  std::int64_t covered_lo() const { return layers.front().start; }
  std::int64_t covered_hi() const {  // one past the last covered position
    return layers.back().start + layers.back().width;
  }
};

// Stationarized sampling: the layer covering coordinate 0 gets size-biased
// badness and a uniform offset; further layers are iid plain on both sides
// until edge positions [-1, n] are covered. Each layer's badness comes from
// the substream (seed, axis role, global index), so extending the window
// never changes layers that were already visible.
LayerSequence build_layer_sequence(const LayerLaw& law, std::int64_t n,
                                   int axis, std::uint64_t seed);

LayerSequence sample_layer_sequence(const ModelParams& params, std::int64_t n,
                                    int axis, std::uint64_t seed);

}  // namespace ersl
