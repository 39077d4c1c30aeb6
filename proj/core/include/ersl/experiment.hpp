#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ersl/dirichlet.hpp"
#include "ersl/generate.hpp"
#include "ersl/walk.hpp"

namespace ersl {

enum class ExperimentKind {
  conductivity_sweep,  // per (n, seed): generate, detect, certify, solve
  event_frequencies,   // per n: empirical P(E) and P(E and F)
  edge_density_vs_L,   // annealed center-edge open probability per L
  walk_msd,            // per (n, seed): displacement curve and fitted slope
  generate_only,       // per (n, seed): edge list + cluster labels
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct SolverSettings {
  double tol = 1e-10;
  std::int64_t max_iter = 0;
  bool jacobi = true;
};

struct WalkSettings {
  std::int64_t walkers = 10000;
  double t_min = 1.0;
  double t_max = 1000.0;
  int sample_count = 24;
  double fit_t_min = 10.0;
  double fit_t_max = 1000.0;
  BoundaryPolicy boundary = BoundaryPolicy::absorb;
  std::int64_t start_u = -1, start_v = -1;
};

struct ExperimentConfig {
  std::optional<ExperimentKind> experiment;
  ModelKind kind = ModelKind::ersl;
  ModelParams params;
  Strictness strictness = Strictness::strict;
  std::vector<std::int64_t> n_list;
  std::uint64_t seed_base = 0;
  std::int64_t replicates = 1;
  std::string output_dir = "out";
  std::vector<std::int64_t> L_list = {0, 1, 2, 3};  // edge_density_vs_L
  double p0 = 0.5;                                  // bernoulli
  ColumnDist column_dist = ColumnDist::uniform01;   // one_directional
  double column_value = 1.0;
  SolverSettings solver;
  WalkSettings walk;
  std::int64_t edge_cap = std::int64_t(1) << 31;
  std::string canonical;  // key-sorted JSON of the parsed document, for hashing
};

// Parses and checks a config document. Unknown keys anywhere are rejected;
// errors carry a JSON pointer to the offending key.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct RowRecord {
  std::int64_t index = 0;
  std::int64_t n = 0;
  std::int64_t replicate = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double wall_ms = 0.0;  // goes to timings.json, never into manifest.json
};

struct RunManifest {
  std::string artifact_version;
  std::string config_hash;
  std::string experiment;
  std::vector<RowRecord> rows;
  std::int64_t failed_rows = 0;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 some rows failed, 2 config error
  RunManifest manifest;
};

// Executes the configured experiment, writing CSV/JSON outputs plus
// manifest.json into config.output_dir. Rows are distributed over a work
// queue (threads = argument, else ERSL_THREADS, else hardware concurrency)
// and results are committed in row order, so every output file is
// byte-identical no matter the thread count. Wall-clock data goes to a
// separate timings.json so reruns reproduce all other files exactly.
RunResult run_experiment(const ExperimentConfig& config, unsigned threads = 0,
                         std::ostream* log = nullptr);

}  // namespace ersl
