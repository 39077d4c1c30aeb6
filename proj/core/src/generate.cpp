#include "ersl/generate.hpp"

#include <algorithm>
#include <cmath>

#include "ersl/rng.hpp"

namespace ersl {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::full: return "full";
    case ModelKind::bernoulli: return "bernoulli";
    case ModelKind::one_directional: return "one_directional";
    case ModelKind::rsl_plain: return "rsl_plain";
    case ModelKind::rsl_elongated_unfilled: return "rsl_elongated_unfilled";
    case ModelKind::ersl: return "ersl";
  }
  throw Error("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "full") return ModelKind::full;
  if (name == "bernoulli") return ModelKind::bernoulli;
  if (name == "one_directional") return ModelKind::one_directional;
  if (name == "rsl_plain") return ModelKind::rsl_plain;
  if (name == "rsl_elongated_unfilled") return ModelKind::rsl_elongated_unfilled;
  if (name == "ersl") return ModelKind::ersl;
  throw ConfigError("unknown model kind: " + name);
}

namespace {

struct Run {
  std::int64_t lo, hi;  // clipped half-open position range
  std::int64_t badness;
  std::uint64_t gidx;  // global layer index, as hash input
};

// layers of seq restricted to positions [lo, hi); pad widens each layer's
// range to the closed vertex interval (one extra position on the right)
std::vector<Run> clip_runs(const LayerSequence& seq, std::int64_t lo,
                           std::int64_t hi, std::int64_t pad = 0) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < seq.layers.size(); ++i) {
    const Layer& l = seq.layers[i];
    std::int64_t a = std::max(l.start, lo);
    std::int64_t b = std::min(l.start + l.width + pad, hi);
    if (a < b)
      runs.push_back({a, b, l.badness,
                      static_cast<std::uint64_t>(seq.global_index(
                          static_cast<std::int64_t>(i)))});
  }
  return runs;
}

std::vector<std::uint64_t> runs_to_mask(const std::vector<Run>& runs,
                                        std::size_t words) {
  std::vector<std::uint64_t> mask(words, 0);
  for (const Run& r : runs)
    for (std::int64_t u = r.lo; u < r.hi; ++u)
      mask[static_cast<std::size_t>(u >> 6)] |= 1ULL << (u & 63);
  return mask;
}

void check_budget(const RealizationSpec& spec) {
  if (spec.n < 1) throw ValidationError("generate: n must be >= 1");
  if (spec.edge_cap < 2 * spec.n * (spec.n + 1))
    throw MemoryBudgetError("generate: window needs " +
                            std::to_string(2 * spec.n * (spec.n + 1)) +
                            " edges, cap is " + std::to_string(spec.edge_cap));
}

void generate_layered(Realization& real) {
  const RealizationSpec& spec = real.spec;
  const ModelParams& mp = spec.params;
  validate(mp, spec.strictness);
  if (mp.d != 2) throw ValidationError("generate: only d = 2 is supported");

  LayerLaw law = spec.kind == ModelKind::rsl_plain ? LayerLaw::unit(mp)
                                                   : LayerLaw::elongated(mp);
  real.layers_x = build_layer_sequence(law, spec.n, 0, spec.seed);
  real.layers_y = build_layer_sequence(law, spec.n, 1, spec.seed);
  const std::int64_t n = spec.n;
  EdgeGrid& grid = real.grid;

  // one Bernoulli(p^badness) state per original edge, broadcast to every
  // elongated copy; horizontal edges take the column's badness, vertical the
  // row's
  std::vector<Run> h_runs = clip_runs(*real.layers_x, 0, n);
  std::vector<Run> vcol_runs = clip_runs(*real.layers_x, 0, n + 1);
  std::vector<double> h_prob(h_runs.size());
  for (std::size_t k = 0; k < h_runs.size(); ++k)
    h_prob[k] = std::pow(mp.p, static_cast<double>(h_runs[k].badness));

  const std::vector<Layer>& ylay = real.layers_y->layers;
  std::size_t yi = 0;
  for (std::int64_t v = 0; v <= n; ++v) {
    while (ylay[yi].start + ylay[yi].width <= v) ++yi;
    std::uint64_t gy =
        static_cast<std::uint64_t>(real.layers_y->global_index(static_cast<std::int64_t>(yi)));
    for (std::size_t k = 0; k < h_runs.size(); ++k) {
      bool open =
          u01(hash3(spec.seed, role::h_edge, h_runs[k].gidx, gy)) < h_prob[k];
      grid.set_h_range(v, h_runs[k].lo, h_runs[k].hi, open);
    }
  }
  yi = 0;
  for (std::int64_t v = 0; v < n; ++v) {
    while (ylay[yi].start + ylay[yi].width <= v) ++yi;
    std::uint64_t gy =
        static_cast<std::uint64_t>(real.layers_y->global_index(static_cast<std::int64_t>(yi)));
    double pv = std::pow(mp.p, static_cast<double>(ylay[yi].badness));
    for (std::size_t k = 0; k < vcol_runs.size(); ++k) {
      bool open =
          u01(hash3(spec.seed, role::v_edge, vcol_runs[k].gidx, gy)) < pv;
      grid.set_v_range(v, vcol_runs[k].lo, vcol_runs[k].hi, open);
    }
  }

  if (spec.kind != ModelKind::ersl) return;

  // Filling: an edge is forced open iff both endpoints lie in some closed
  // rectangle [a, a+Sx] x [b, b+Sy] spanned by an x-layer and a y-layer of
  // badness <= L. For a horizontal edge that means its column's layer
  // qualifies and its row is in the closed vertex range of a qualifying
  // y-layer (the row's own layer, or the one just below at the shared
  // boundary). Vertical edges are symmetric.
  const std::int64_t L = mp.L;
  auto qualifying = [L](std::vector<Run> runs) {
    std::erase_if(runs, [L](const Run& r) { return r.badness > L; });
    return runs;
  };
  std::vector<std::uint64_t> mask_h =
      runs_to_mask(qualifying(clip_runs(*real.layers_x, 0, n)),
                   grid.h_words_per_row());
  std::vector<std::uint64_t> mask_v =
      runs_to_mask(qualifying(clip_runs(*real.layers_x, 0, n + 1, 1)),
                   grid.v_words_per_row());

  std::vector<char> y_vertex_ok(static_cast<std::size_t>(n + 1), 0);
  std::vector<char> y_edge_ok(static_cast<std::size_t>(n), 0);
  for (const Run& r : qualifying(clip_runs(*real.layers_y, 0, n + 1, 1)))
    for (std::int64_t v = r.lo; v < r.hi; ++v)
      y_vertex_ok[static_cast<std::size_t>(v)] = 1;
  for (const Run& r : qualifying(clip_runs(*real.layers_y, 0, n)))
    for (std::int64_t v = r.lo; v < r.hi; ++v)
      y_edge_ok[static_cast<std::size_t>(v)] = 1;

  for (std::int64_t v = 0; v <= n; ++v)
    if (y_vertex_ok[static_cast<std::size_t>(v)]) grid.or_h_row(v, mask_h.data());
  for (std::int64_t v = 0; v < n; ++v)
    if (y_edge_ok[static_cast<std::size_t>(v)]) grid.or_v_row(v, mask_v.data());
}

}  // namespace

EdgeGrid generate_one_directional(std::int64_t n, std::uint64_t seed,
                                  ColumnDist dist, double value) {
  if (n < 1) throw ValidationError("generate: n must be >= 1");
  if (dist == ColumnDist::fixed && !(value >= 0.0 && value <= 1.0))
    throw ValidationError("one_directional: fixed column probability must be in [0,1]");
  EdgeGrid grid(n);
  for (std::int64_t v = 0; v < n; ++v) grid.set_v_range(v, 0, n + 1, true);
  for (std::int64_t u = 0; u < n; ++u) {
    double pu = dist == ColumnDist::fixed
                    ? value
                    : u01(hash2(seed, role::column_prob, static_cast<std::uint64_t>(u)));
    for (std::int64_t v = 0; v <= n; ++v)
      grid.set_h(u, v,
                 u01(hash3(seed, role::h_edge, static_cast<std::uint64_t>(u),
                           static_cast<std::uint64_t>(v))) < pu);
  }
  return grid;
}

Realization generate_window(const RealizationSpec& spec) {
  check_budget(spec);
  Realization real{spec, EdgeGrid(spec.n), std::nullopt, std::nullopt};
  const std::int64_t n = spec.n;
  switch (spec.kind) {
    case ModelKind::full:
      for (std::int64_t v = 0; v <= n; ++v) real.grid.set_h_range(v, 0, n, true);
      for (std::int64_t v = 0; v < n; ++v) real.grid.set_v_range(v, 0, n + 1, true);
      break;
    case ModelKind::bernoulli: {
      if (!(spec.p0 >= 0.0 && spec.p0 <= 1.0))
        throw ValidationError("bernoulli: p0 must be in [0,1]");
      for (std::int64_t v = 0; v <= n; ++v)
        for (std::int64_t u = 0; u < n; ++u)
          real.grid.set_h(u, v,
                          u01(hash3(spec.seed, role::h_edge, static_cast<std::uint64_t>(u),
                                    static_cast<std::uint64_t>(v))) < spec.p0);
      for (std::int64_t v = 0; v < n; ++v)
        for (std::int64_t u = 0; u <= n; ++u)
          real.grid.set_v(u, v,
                          u01(hash3(spec.seed, role::v_edge, static_cast<std::uint64_t>(u),
                                    static_cast<std::uint64_t>(v))) < spec.p0);
      break;
    }
    case ModelKind::one_directional:
      real.grid = generate_one_directional(n, spec.seed, spec.column_dist,
                                           spec.column_value);
      break;
    case ModelKind::rsl_plain:
    case ModelKind::rsl_elongated_unfilled:
    case ModelKind::ersl:
      generate_layered(real);
      break;
  }
  return real;
}

AnnealedEstimate annealed_edge_open_probability(const RealizationSpec& spec,
                                                std::int64_t reps) {
  if (reps < 1) throw ValidationError("annealed estimate: reps must be >= 1");
  RealizationSpec rep_spec = spec;
  std::int64_t hits = 0;
  const std::int64_t uc = (spec.n - 1) / 2, vc = spec.n / 2;
  for (std::int64_t r = 0; r < reps; ++r) {
    rep_spec.seed = seed_for(spec.seed, static_cast<std::uint64_t>(r),
                             static_cast<std::uint64_t>(spec.n), role::annealed);
    hits += generate_window(rep_spec).grid.open_h(uc, vc);
  }
  double est = static_cast<double>(hits) / static_cast<double>(reps);
  return {est, std::sqrt(est * (1.0 - est) / static_cast<double>(reps)),
          reps};
}

}  // namespace ersl
