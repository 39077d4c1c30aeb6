#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ersl/grid.hpp"
#include "ersl/layers.hpp"
#include "ersl/params.hpp"

namespace ersl {

enum class ModelKind {
  full,                    // every edge open
  bernoulli,               // iid edges, probability p0
  one_directional,         // vertical edges open, column i horizontal iid P_i
  rsl_plain,               // badness per column/row, widths all 1
  rsl_elongated_unfilled,  // stretched layers, no filling
  ersl,                    // stretched + filled at level params.L
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// law of the per-column probability P_i of the one_directional model
enum class ColumnDist { uniform01, fixed };

struct RealizationSpec {
  ModelParams params;  // used by rsl_plain / rsl_elongated_unfilled / ersl
  ModelKind kind = ModelKind::ersl;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  Strictness strictness = Strictness::strict;
  double p0 = 0.5;                                 // bernoulli only
  ColumnDist column_dist = ColumnDist::uniform01;  // one_directional only
  double column_value = 1.0;                       // one_directional, fixed dist
  std::int64_t edge_cap = std::int64_t(1) << 31;   // total-edge memory budget
};

struct Realization {
  RealizationSpec spec;
  EdgeGrid grid;
  // present for the layered kinds only
  std::optional<LayerSequence> layers_x, layers_y;

  bool layered() const { return layers_x.has_value(); }
};

// Samples the window. Layered kinds draw an x- and a y-layer sequence, give
// each original edge one shared state (horizontal edges die with the column's
// badness, vertical with the row's), broadcast that state to all elongated
// copies, and for the ersl kind finally force open every edge whose endpoints
// both lie in a closed rectangle spanned by an x-layer and a y-layer of
// badness <= L. Identical spec (including seed) gives a bit-identical grid,
// and enlarging n only appends; it never changes edges already visible.
Realization generate_window(const RealizationSpec& spec);

EdgeGrid generate_one_directional(std::int64_t n, std::uint64_t seed,
                                  ColumnDist dist, double value = 1.0);

struct AnnealedEstimate {
  double estimate = 0.0;
  double se = 0.0;
  std::int64_t reps = 0;
};

// Monte Carlo probability that the horizontal edge nearest the window center
// is open, over independent realizations of spec (spec.seed acts as the
// base; replicate r uses seed_for(seed, r, n, annealed)). Replicate seeds do
// not depend on params.L, so estimates for different L are coupled.
AnnealedEstimate annealed_edge_open_probability(const RealizationSpec& spec,
                                                std::int64_t reps);

}  // namespace ersl
