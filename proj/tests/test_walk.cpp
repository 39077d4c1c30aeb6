#include "ersl/walk.hpp"

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "ersl/generate.hpp"

using namespace ersl;

namespace {

EdgeGrid full_grid(std::int64_t n) {
  RealizationSpec spec;
  spec.kind = ModelKind::full;
  spec.n = n;
  return generate_window(spec).grid;
}

WalkConfig base_config(std::int64_t walkers, double t_max) {
  WalkConfig wc;
  wc.n_walkers = walkers;
  wc.t_max = t_max;
  wc.sample_times = geometric_times(1.0, t_max, 16);
  wc.seed = 77;
  return wc;
}

}  // namespace

TEST_CASE("geometric time grids") {
  std::vector<double> ts = geometric_times(1.0, 1000.0, 4);
  REQUIRE(ts.size() == 4);
  CHECK(ts.front() == doctest::Approx(1.0));
  CHECK(ts.back() == doctest::Approx(1000.0));
  CHECK(ts[1] == doctest::Approx(10.0).epsilon(1e-9));
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
  CHECK_THROWS_AS(geometric_times(0.0, 10.0, 4), ValidationError);
  CHECK_THROWS_AS(geometric_times(10.0, 1.0, 4), ValidationError);
  CHECK_THROWS_AS(geometric_times(1.0, 10.0, 0), ValidationError);
}

TEST_CASE("free diffusion: mean squared displacement grows like 4t") {
  EdgeGrid g = full_grid(256);
  WalkConfig wc = base_config(4000, 100.0);
  MsdCurve curve = simulate_walks(g, wc);
  REQUIRE(curve.points.size() == 16);
  for (const MsdPoint& pt : curve.points) {
    CHECK(pt.survivors == 4000);
    CHECK(std::abs(pt.mean - 4.0 * pt.t) <= 5.0 * pt.se + 0.15 * pt.t);
  }
  ExponentFit fit = fit_exponent(curve, 1.0, 100.0);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.08));
  CHECK(fit.points_used >= 5);
  // rate calibration: holding rates equal open degrees
  CHECK(curve.mean_jump_rate ==
        doctest::Approx(curve.mean_visited_degree).epsilon(0.02));
  CHECK(curve.mean_visited_degree == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("runs are deterministic in the seed") {
  EdgeGrid g = full_grid(64);
  WalkConfig wc = base_config(500, 50.0);
  MsdCurve a = simulate_walks(g, wc);
  MsdCurve b = simulate_walks(g, wc);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].mean == b.points[i].mean);
    CHECK(a.points[i].survivors == b.points[i].survivors);
  }
  wc.seed = 78;
  MsdCurve c = simulate_walks(g, wc);
  bool differs = false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    differs = differs || a.points[i].mean != c.points[i].mean;
  CHECK(differs);
}

TEST_CASE("an isolated open pair saturates below 1") {
  EdgeGrid g(8);
  g.set_h(4, 4, true);  // only (4,4)-(5,4)
  WalkConfig wc = base_config(2000, 200.0);
  MsdCurve curve = simulate_walks(g, wc);
  const MsdPoint& last = curve.points.back();
  CHECK(last.mean <= 1.0);
  CHECK(last.mean >= 0.2);  // stationary value is 1/2
  CHECK(last.survivors == 2000);
}

TEST_CASE("degree-zero start is rejected") {
  EdgeGrid g(8);
  g.set_h(0, 0, true);
  WalkConfig wc = base_config(10, 10.0);  // center (4,4) is isolated
  CHECK_THROWS_AS(simulate_walks(g, wc), ValidationError);
  wc.start_u = 0;
  wc.start_v = 0;
  CHECK_NOTHROW(simulate_walks(g, wc));
}

TEST_CASE("boundary policies: rejection discards whole runs") {
  EdgeGrid g = full_grid(8);  // tiny window, walkers hit the edge quickly
  WalkConfig wc = base_config(1000, 50.0);
  wc.boundary = BoundaryPolicy::absorb;
  MsdCurve absorb = simulate_walks(g, wc);
  wc.boundary = BoundaryPolicy::reject;
  MsdCurve reject = simulate_walks(g, wc);
  // nearly every walker reaches the boundary well before t = 50
  CHECK(absorb.points.back().survivors < 100);
  CHECK(reject.points.back().survivors < 100);
  // rejection drops the run entirely, so early times lose walkers too
  CHECK(reject.points.front().survivors <= absorb.points.front().survivors);
  // absorbed runs keep their early samples (boundary hits by t=1 are rare)
  CHECK(absorb.points.front().survivors >= 950);
}

TEST_CASE("the exponent fit refuses starved windows") {
  EdgeGrid g = full_grid(8);
  WalkConfig wc = base_config(1000, 50.0);
  MsdCurve curve = simulate_walks(g, wc);
  // survival at late times is far below 90%
  CHECK_THROWS_AS(fit_exponent(curve, 10.0, 50.0), ValidationError);
}

TEST_CASE("walk configuration validation") {
  EdgeGrid g = full_grid(16);
  WalkConfig wc = base_config(10, 10.0);
  wc.sample_times = {5.0, 2.0};
  CHECK_THROWS_AS(simulate_walks(g, wc), ValidationError);
  wc = base_config(10, 10.0);
  wc.sample_times = {0.5, 20.0};  // beyond t_max
  CHECK_THROWS_AS(simulate_walks(g, wc), ValidationError);
  wc = base_config(0, 10.0);
  CHECK_THROWS_AS(simulate_walks(g, wc), ValidationError);
}
