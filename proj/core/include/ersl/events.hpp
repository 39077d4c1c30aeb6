#pragma once

#include <cstdint>
#include <optional>

#include "ersl/generate.hpp"

namespace ersl {

struct BadLayerHit {
  int axis = 0;
  std::int64_t badness = 0;
  std::int64_t x_start = 0;  // first edge column of the layer
  std::int64_t width = 0;
  bool fully_inside = true;
};

// Leftmost x-layer with badness >= threshold whose whole edge range fits in
// the window (start >= 0 and start + width <= n); layers poking past either
// side are never certified. Returns nothing when no layer qualifies.
std::optional<BadLayerHit> detect_bad_layer(const LayerSequence& layers_x,
                                            std::int64_t n, double threshold);
std::optional<BadLayerHit> detect_bad_layer(const Realization& real,
                                            double threshold);

// Open horizontal edges at the single column u = hit.x_start, over all rows
// v in [0, n]. Copy consistency makes the count equal at every column of the
// layer; that is re-verified here and a violation throws.
std::int64_t count_open_in_layer_column(const Realization& real,
                                        const BadLayerHit& hit);

struct EventWitness {
  std::optional<BadLayerHit> hit;
  std::int64_t open_count = -1;        // duplicated rows, as they occur
  std::int64_t distinct_open_rows = -1;  // original (per-y-layer) rows, diagnostic
  double threshold = 0.0;              // badness threshold used
  double f_threshold = 0.0;            // 2 n p^threshold
};

struct EventResult {
  bool E = false;  // a certified-width bad layer exists
  bool F = false;  // E and its per-column open count is <= f_threshold
  EventWitness witness;
};

EventResult event_E_and_F(const Realization& real);

}  // namespace ersl
