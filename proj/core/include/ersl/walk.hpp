#pragma once

#include <cstdint>
#include <vector>

#include "ersl/grid.hpp"

namespace ersl {

enum class BoundaryPolicy {
  absorb,  // stop at the window edge; drop from later sample times
  reject,  // discard the whole run if the window edge is ever reached
};

struct WalkConfig {
  std::int64_t n_walkers = 0;
  double t_max = 0.0;
  std::vector<double> sample_times;  // ascending, in (0, t_max]
  std::int64_t start_u = -1;         // -1 puts the start at the window center
  std::int64_t start_v = -1;
  BoundaryPolicy boundary = BoundaryPolicy::absorb;
  std::uint64_t seed = 0;
};

struct MsdPoint {
  double t = 0.0;
  double mean = 0.0;  // mean squared displacement over surviving walkers
  double se = 0.0;
  std::int64_t survivors = 0;
};

struct MsdCurve {
  std::vector<MsdPoint> points;
  std::int64_t walkers = 0;
  double mean_jump_rate = 0.0;      // total jumps / total simulated time
  double mean_visited_degree = 0.0; // time-weighted open degree along paths
};

// Variable-speed walk: holding time at z is Exp(open degree of z), the jump
// goes to a uniformly chosen open neighbor. Walkers are independent, each on
// its own substream of config.seed, so curves are deterministic. A walker at
// a degree-0 start is an error; one that reaches the window edge follows the
// boundary policy.
MsdCurve simulate_walks(const EdgeGrid& grid, const WalkConfig& config);

// count geometrically spaced times in [t_min, t_max]
std::vector<double> geometric_times(double t_min, double t_max, int count);

struct ExponentFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
  double fit_t_min = 0.0, fit_t_max = 0.0;  // realized window
  int points_used = 0;
};

// Least-squares slope of log mean vs log t over sample times inside
// [t_min, t_max], restricted to times where at least 90% of walkers survive.
// Throws if fewer than 5 points remain.
ExponentFit fit_exponent(const MsdCurve& curve, double t_min, double t_max);

}  // namespace ersl
