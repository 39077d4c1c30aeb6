#include "ersl/events.hpp"

#include <cmath>

namespace ersl {

std::optional<BadLayerHit> detect_bad_layer(const LayerSequence& layers_x,
                                            std::int64_t n, double threshold) {
  for (const Layer& l : layers_x.layers) {
    if (l.start < 0 || l.start + l.width > n) continue;
    if (static_cast<double>(l.badness) >= threshold)
      return BadLayerHit{layers_x.axis, l.badness, l.start, l.width, true};
  }
  return std::nullopt;
}

std::optional<BadLayerHit> detect_bad_layer(const Realization& real,
                                            double threshold) {
  if (!real.layered())
    throw Error("detect_bad_layer: realization has no layer metadata");
  return detect_bad_layer(*real.layers_x, real.grid.n(), threshold);
}

std::int64_t count_open_in_layer_column(const Realization& real,
                                        const BadLayerHit& hit) {
  const EdgeGrid& grid = real.grid;
  std::int64_t count = 0;
  for (std::int64_t v = 0; v <= grid.n(); ++v)
    count += grid.open_h(hit.x_start, v);
  for (std::int64_t u = hit.x_start + 1; u < hit.x_start + hit.width; ++u) {
    std::int64_t c = 0;
    for (std::int64_t v = 0; v <= grid.n(); ++v) c += grid.open_h(u, v);
    if (c != count)
      throw Error("copy consistency violated inside a layer: column " +
                  std::to_string(u) + " has " + std::to_string(c) +
                  " open edges, column " + std::to_string(hit.x_start) +
                  " has " + std::to_string(count));
  }
  return count;
}

EventResult event_E_and_F(const Realization& real) {
  if (!real.layered())
    throw Error("event_E_and_F: realization has no layer metadata");
  const std::int64_t n = real.grid.n();
  const ModelParams& mp = real.spec.params;

  EventResult out;
  out.witness.threshold = threshold_badness(n, mp);
  out.witness.f_threshold =
      2.0 * static_cast<double>(n) * std::pow(mp.p, out.witness.threshold);
  out.witness.hit = detect_bad_layer(real, out.witness.threshold);
  if (!out.witness.hit) return out;

  out.E = true;
  out.witness.open_count = count_open_in_layer_column(real, *out.witness.hit);
  out.F = static_cast<double>(out.witness.open_count) <= out.witness.f_threshold;

  // diagnostic: the same count with duplicated rows collapsed to one per
  // y-layer (a layer counts as open if any of its rows is open here)
  const LayerSequence& ys = *real.layers_y;
  std::size_t yi = 0;
  std::int64_t distinct = 0;
  bool seen_open = false;
  for (std::int64_t v = 0; v <= n; ++v) {
    while (ys.layers[yi].start + ys.layers[yi].width <= v) {
      distinct += seen_open;
      seen_open = false;
      ++yi;
    }
    seen_open = seen_open || real.grid.open_h(out.witness.hit->x_start, v);
  }
  distinct += seen_open;
  out.witness.distinct_open_rows = distinct;
  return out;
}

}  // namespace ersl
