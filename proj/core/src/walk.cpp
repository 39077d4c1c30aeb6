#include "ersl/walk.hpp"

#include <cmath>

#include "ersl/rng.hpp"

namespace ersl {

std::vector<double> geometric_times(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || count < 1)
    throw ValidationError("geometric_times: need 0 < t_min <= t_max, count >= 1");
  std::vector<double> times(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    times[static_cast<std::size_t>(i)] =
        t_min * std::pow(t_max / t_min, f);
  }
  times.back() = t_max;
  return times;
}

MsdCurve simulate_walks(const EdgeGrid& grid, const WalkConfig& config) {
  const std::int64_t n = grid.n();
  if (config.n_walkers < 1)
    throw ValidationError("walk: n_walkers must be >= 1");
  if (!(config.t_max > 0.0)) throw ValidationError("walk: t_max must be > 0");
  const std::size_t nt = config.sample_times.size();
  if (nt == 0) throw ValidationError("walk: no sample times");
  for (std::size_t k = 0; k < nt; ++k) {
    double t = config.sample_times[k];
    bool ascending = k == 0 || t > config.sample_times[k - 1];
    if (!(t > 0.0) || t > config.t_max || !ascending)
      throw ValidationError("walk: sample times must be ascending in (0, t_max]");
  }
  const std::int64_t su = config.start_u < 0 ? n / 2 : config.start_u;
  const std::int64_t sv = config.start_v < 0 ? n / 2 : config.start_v;
  if (su < 0 || su > n || sv < 0 || sv > n)
    throw ValidationError("walk: start vertex outside the window");
  if (grid.degree(su, sv) == 0)
    throw ValidationError("walk: start vertex has no open edge");

  std::vector<double> sum(nt, 0.0), sumsq(nt, 0.0);
  std::vector<std::int64_t> alive(nt, 0);
  std::vector<double> sq_at(nt);  // walker's |X_t - X_0|^2 per sample time
  double total_jumps = 0.0, total_time = 0.0, degree_time = 0.0;

  for (std::int64_t w = 0; w < config.n_walkers; ++w) {
    Rng rng(seed_for(config.seed, static_cast<std::uint64_t>(w),
                     static_cast<std::uint64_t>(n), role::walker));
    std::int64_t u = su, v = sv;
    double t = 0.0;
    std::size_t next = 0;  // first unrecorded sample time
    bool boundary_hit = false;

    while (next < nt) {
      if (u == 0 || u == n || v == 0 || v == n) {
        boundary_hit = true;
        break;
      }
      int deg = grid.degree(u, v);
      double hold;
      if (deg == 0) {
        hold = config.t_max - t + 1.0;  // stuck forever
      } else {
        hold = rng.exponential(static_cast<double>(deg));
      }
      double t_jump = t + hold;
      double dx = static_cast<double>(u - su), dy = static_cast<double>(v - sv);
      double sq = dx * dx + dy * dy;
      while (next < nt && config.sample_times[next] <= t_jump) {
        sq_at[next] = sq;
        ++next;
      }
      double observed = std::min(t_jump, config.t_max) - t;
      if (observed > 0.0) {
        total_time += observed;
        degree_time += observed * deg;
      }
      if (deg == 0 || next >= nt) break;
      // fixed direction order keeps the draw reproducible
      int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(deg)));
      if (u < n && grid.open_h(u, v) && pick-- == 0) ++u;
      else if (u > 0 && grid.open_h(u - 1, v) && pick-- == 0) --u;
      else if (v < n && grid.open_v(u, v) && pick-- == 0) ++v;
      else --v;
      t = t_jump;
      total_jumps += 1.0;
    }

    std::size_t keep = boundary_hit && config.boundary == BoundaryPolicy::reject
                           ? 0
                           : next;
    for (std::size_t k = 0; k < keep; ++k) {
      sum[k] += sq_at[k];
      sumsq[k] += sq_at[k] * sq_at[k];
      ++alive[k];
    }
  }

  MsdCurve curve;
  curve.walkers = config.n_walkers;
  curve.points.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    MsdPoint& pt = curve.points[k];
    pt.t = config.sample_times[k];
    pt.survivors = alive[k];
    if (alive[k] > 0) pt.mean = sum[k] / static_cast<double>(alive[k]);
    if (alive[k] > 1) {
      double var = (sumsq[k] - sum[k] * pt.mean) / static_cast<double>(alive[k] - 1);
      pt.se = std::sqrt(std::max(var, 0.0) / static_cast<double>(alive[k]));
    }
  }
  curve.mean_jump_rate = total_time > 0.0 ? total_jumps / total_time : 0.0;
  curve.mean_visited_degree = total_time > 0.0 ? degree_time / total_time : 0.0;
  return curve;
}

ExponentFit fit_exponent(const MsdCurve& curve, double t_min, double t_max) {
  if (!(t_min > 0.0) || !(t_max >= t_min))
    throw ValidationError("fit: need 0 < t_min <= t_max");
  std::vector<double> lx, ly;
  for (const MsdPoint& pt : curve.points) {
    if (pt.t < t_min || pt.t > t_max) continue;
    if (10 * pt.survivors < 9 * curve.walkers) continue;  // < 90% survival
    if (!(pt.mean > 0.0)) continue;
    lx.push_back(std::log(pt.t));
    ly.push_back(std::log(pt.mean));
  }
  const std::size_t m = lx.size();
  if (m < 5)
    throw ValidationError("fit: fewer than 5 usable sample times in the window");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.slope_se =
      m > 2 ? std::sqrt(ss_res / (static_cast<double>(m - 2) * sxx)) : 0.0;
  fit.fit_t_min = std::exp(lx.front());
  fit.fit_t_max = std::exp(lx.back());
  fit.points_used = static_cast<int>(m);
  return fit;
}

}  // namespace ersl
