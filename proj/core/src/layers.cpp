#include "ersl/layers.hpp"

#include <algorithm>
#include <cmath>

namespace ersl {

namespace {
constexpr double kWidthLimit = 9007199254740992.0;  // 2^53
}

LayerLaw LayerLaw::elongated(const ModelParams& params) {
  LayerLaw law;
  law.params_ = params;
  law.unit_width_ = false;
  law.mean_ = mean_layer_width(params, 1e-15);
  return law;
}

LayerLaw LayerLaw::unit(const ModelParams& params) {
  LayerLaw law;
  law.params_ = params;
  law.unit_width_ = true;
  law.mean_ = 1.0;
  return law;
}

LayerLaw LayerLaw::constant(std::int64_t badness, const ModelParams& params) {
  if (badness < 0) throw ValidationError("constant layer law: badness must be >= 0");
  LayerLaw law;
  law.params_ = params;
  law.fixed_badness_ = badness;
  law.mean_ = layer_width_real(static_cast<double>(badness), params);
  return law;
}

std::int64_t LayerLaw::plain_badness(std::uint64_t bits) const {
  if (fixed_badness_ >= 0) return fixed_badness_;
  // inversion of the geometric tail: P(N >= first + k) = q^k
  double u = u01(bits);
  auto g = static_cast<std::int64_t>(
      std::floor(std::log1p(-u) / std::log(params_.q)));
  std::int64_t first = params_.convention == PmfConvention::definition ? 1 : 0;
  return first + std::max<std::int64_t>(g, 0);
}

std::int64_t LayerLaw::width(std::int64_t badness) const {
  if (unit_width_) return 1;
  double w = layer_width_real(static_cast<double>(badness), params_);
  if (!(w <= kWidthLimit)) return kGiantWidth;
  return static_cast<std::int64_t>(w);
}

std::int64_t LayerLaw::origin_badness(std::uint64_t bits) const {
  if (fixed_badness_ >= 0) return fixed_badness_;
  // single-uniform inversion against cum S(l) pmf(l) / E[S]; the summand tail
  // is geometric so the walk terminates fast. The fold at the iteration cap
  // carries negligible mass.
  double u = u01(bits);
  std::int64_t ell = params_.convention == PmfConvention::definition ? 1 : 0;
  double cum = 0.0;
  for (std::int64_t it = 0; it < 2000000; ++it, ++ell) {
    double w = unit_width_
                   ? 1.0
                   : layer_width_real(static_cast<double>(ell), params_);
    cum += w * plain_pmf(ell, params_) / mean_;
    if (u < cum) return ell;
  }
  return ell;
}

LayerSequence build_layer_sequence(const LayerLaw& law, std::int64_t n,
                                   int axis, std::uint64_t seed) {
  if (n < 1) throw ValidationError("layer sequence: n must be >= 1");
  const std::uint64_t bad_role = axis == 0 ? role::x_badness : role::y_badness;
  const std::uint64_t off_role = axis == 0 ? role::x_offset : role::y_offset;

  LayerSequence seq;
  seq.axis = axis;

  std::int64_t b0 = law.origin_badness(hash2(seed, bad_role, 0));
  std::int64_t w0 = law.width(b0);
  std::int64_t offset, start0;
  if (w0 >= kGiantWidth) {
    // covers any window; the visible-boundary case has probability ~2^-52
    offset = kGiantWidth / 2;
    start0 = -offset;
  } else {
    Rng r(hash2(seed, off_role, 0));
    offset = w0 == 1 ? 0 : static_cast<std::int64_t>(r.below(static_cast<std::uint64_t>(w0)));
    start0 = -offset;
  }
  seq.origin_offset = offset;
  seq.layers.push_back({b0, w0, start0});

  std::int64_t k = 1;  // rightward global indices
  while (seq.layers.back().start + seq.layers.back().width <= n) {
    std::int64_t b = law.plain_badness(hash2(seed, bad_role, static_cast<std::uint64_t>(k)));
    std::int64_t w = law.width(b);
    std::int64_t s = seq.layers.back().start + seq.layers.back().width;
    seq.layers.push_back({b, w, s});
    ++k;
  }
  std::int64_t kl = -1;  // leftward global indices
  std::vector<Layer> left;
  {
    std::int64_t front_start = start0;
    while (front_start > -1) {
      std::int64_t b = law.plain_badness(hash2(seed, bad_role, static_cast<std::uint64_t>(kl)));
      std::int64_t w = law.width(b);
      front_start -= w;
      left.push_back({b, w, front_start});
      --kl;
    }
  }
  std::reverse(left.begin(), left.end());
  seq.origin_index = static_cast<std::int64_t>(left.size());
  seq.first_global_index = kl + 1;
  left.insert(left.end(), seq.layers.begin(), seq.layers.end());
  seq.layers = std::move(left);
  return seq;
}

LayerSequence sample_layer_sequence(const ModelParams& params, std::int64_t n,
                                    int axis, std::uint64_t seed) {
  return build_layer_sequence(LayerLaw::elongated(params), n, axis, seed);
}

std::int64_t LayerSequence::index_of(std::int64_t pos) const {
  // last layer with start <= pos
  auto it = std::upper_bound(layers.begin(), layers.end(), pos,
                             [](std::int64_t v, const Layer& l) { return v < l.start; });
  if (it == layers.begin()) throw Error("layer lookup below covered range");
  --it;
  if (pos >= it->start + it->width) throw Error("layer lookup above covered range");
  return static_cast<std::int64_t>(it - layers.begin());
}

}  // namespace ersl
