#include "ersl/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>

#include <Eigen/Dense>

#include "ersl/cluster.hpp"
#include "ersl/params.hpp"

namespace ersl {

namespace {

constexpr std::int64_t kDenseVertexCap = 10000;

struct FaceTouch {
  std::vector<char> lo, hi;  // per component id
};

FaceTouch face_touch(const EdgeGrid& grid, const std::vector<std::int32_t>& comp,
                     std::int64_t comp_count) {
  FaceTouch t{std::vector<char>(static_cast<std::size_t>(comp_count), 0),
              std::vector<char>(static_cast<std::size_t>(comp_count), 0)};
  const std::int64_t n = grid.n();
  for (std::int64_t v = 0; v <= n; ++v) {
    t.lo[static_cast<std::size_t>(comp[static_cast<std::size_t>(grid.vid(0, v))])] = 1;
    t.hi[static_cast<std::size_t>(comp[static_cast<std::size_t>(grid.vid(n, v))])] = 1;
  }
  return t;
}

// potential with every constrained or pinned vertex filled in and free
// (interior, both-face-component) vertices left at 0; free_index maps vid ->
// row of the reduced system, -1 elsewhere
struct Reduction {
  std::vector<double> potential;
  std::vector<std::int64_t> free_index;
  std::vector<std::int64_t> free_vid;
};

Reduction reduce(const EdgeGrid& grid, const std::vector<std::int32_t>& comp,
                 const FaceTouch& touch) {
  const std::int64_t n = grid.n();
  Reduction red;
  red.potential.assign(static_cast<std::size_t>(grid.vertex_count()), 0.0);
  red.free_index.assign(static_cast<std::size_t>(grid.vertex_count()), -1);
  for (std::int64_t v = 0; v <= n; ++v)
    red.potential[static_cast<std::size_t>(grid.vid(n, v))] = 1.0;
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 1; u < n; ++u) {
      std::int64_t z = grid.vid(u, v);
      std::int32_t c = comp[static_cast<std::size_t>(z)];
      bool lo = touch.lo[static_cast<std::size_t>(c)];
      bool hi = touch.hi[static_cast<std::size_t>(c)];
      if (lo && hi) {
        red.free_index[static_cast<std::size_t>(z)] =
            static_cast<std::int64_t>(red.free_vid.size());
        red.free_vid.push_back(z);
      } else if (hi) {
        red.potential[static_cast<std::size_t>(z)] = 1.0;
      }
    }
  return red;
}

void finish(DirichletSolution& sol, const EdgeGrid& grid) {
  sol.energy = dirichlet_energy(grid, sol.potential);
  sol.normalized_energy = sol.energy;  // n^(2-d) with d = 2
}

DirichletSolution solve_axis0(const EdgeGrid& grid, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("solve: tol must be > 0");
  const std::int64_t n = grid.n();

  ClusterReport clusters = cluster(grid);
  FaceTouch touch = face_touch(grid, clusters.component_id, clusters.component_count);
  Reduction red = reduce(grid, clusters.component_id, touch);

  DirichletSolution sol;
  sol.potential = red.potential;
  const std::int64_t m = static_cast<std::int64_t>(red.free_vid.size());
  if (m == 0) {
    finish(sol, grid);
    return sol;
  }

  // Dirichlet-reduced graph Laplacian in CSR form. Diagonal = open degree;
  // open neighbors are -1 if free, otherwise move their value to the rhs.
  std::vector<std::int64_t> row_ptr(static_cast<std::size_t>(m) + 1, 0);
  std::vector<std::int32_t> col;
  std::vector<double> diag(static_cast<std::size_t>(m), 0.0);
  std::vector<double> b(static_cast<std::size_t>(m), 0.0);
  col.reserve(static_cast<std::size_t>(m) * 4);
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t z = red.free_vid[static_cast<std::size_t>(i)];
    std::int64_t u = z % (n + 1), v = z / (n + 1);
    std::int64_t nbrs[4];
    int cnt = 0;
    if (u < n && grid.open_h(u, v)) nbrs[cnt++] = grid.vid(u + 1, v);
    if (u > 0 && grid.open_h(u - 1, v)) nbrs[cnt++] = grid.vid(u - 1, v);
    if (v < n && grid.open_v(u, v)) nbrs[cnt++] = grid.vid(u, v + 1);
    if (v > 0 && grid.open_v(u, v - 1)) nbrs[cnt++] = grid.vid(u, v - 1);
    diag[static_cast<std::size_t>(i)] = cnt;
    for (int k = 0; k < cnt; ++k) {
      std::int64_t j = red.free_index[static_cast<std::size_t>(nbrs[k])];
      if (j >= 0)
        col.push_back(static_cast<std::int32_t>(j));
      else
        b[static_cast<std::size_t>(i)] +=
            red.potential[static_cast<std::size_t>(nbrs[k])];
    }
    row_ptr[static_cast<std::size_t>(i) + 1] =
        static_cast<std::int64_t>(col.size());
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::int64_t i = 0; i < m; ++i) {
      double acc = diag[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      for (std::int64_t k = row_ptr[static_cast<std::size_t>(i)];
           k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
        acc -= x[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
      out[static_cast<std::size_t>(i)] = acc;
    }
  };
  auto dot = [m](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0.0;
    for (std::int64_t i = 0; i < m; ++i)
      s += a[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
    return s;
  };

  const std::int64_t max_iter =
      opts.max_iter > 0 ? opts.max_iter : 20 * (n + 1) * (n + 1);
  std::vector<double> x(static_cast<std::size_t>(m), 0.0), r = b,
      z(static_cast<std::size_t>(m)), p(static_cast<std::size_t>(m)),
      Ap(static_cast<std::size_t>(m));
  const double b_norm = std::sqrt(dot(b, b));
  double r_norm = b_norm;
  std::int64_t it = 0;
  if (b_norm > 0.0) {
    auto precond = [&](const std::vector<double>& in, std::vector<double>& out) {
      if (opts.jacobi)
        for (std::int64_t i = 0; i < m; ++i)
          out[static_cast<std::size_t>(i)] =
              in[static_cast<std::size_t>(i)] / diag[static_cast<std::size_t>(i)];
      else
        out = in;
    };
    precond(r, z);
    p = z;
    double rz = dot(r, z);
    for (; it < max_iter; ++it) {
      apply(p, Ap);
      double alpha = rz / dot(p, Ap);
      for (std::int64_t i = 0; i < m; ++i) {
        x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
        r[static_cast<std::size_t>(i)] -= alpha * Ap[static_cast<std::size_t>(i)];
      }
      r_norm = std::sqrt(dot(r, r));
      if (r_norm <= opts.tol * b_norm) {
        ++it;
        break;
      }
      precond(r, z);
      double rz_next = dot(r, z);
      double beta = rz_next / rz;
      rz = rz_next;
      for (std::int64_t i = 0; i < m; ++i)
        p[static_cast<std::size_t>(i)] =
            z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
    }
    if (r_norm > opts.tol * b_norm)
      throw SolverError("conjugate gradient did not reach tolerance " +
                            std::to_string(opts.tol) + " in " +
                            std::to_string(it) + " iterations",
                        it, r_norm / b_norm);
  }

  for (std::int64_t i = 0; i < m; ++i)
    sol.potential[static_cast<std::size_t>(red.free_vid[static_cast<std::size_t>(i)])] =
        x[static_cast<std::size_t>(i)];
  sol.iterations = it;
  sol.relative_residual = b_norm > 0.0 ? r_norm / b_norm : 0.0;
  finish(sol, grid);
  return sol;
}

// vid remap between a grid and its transpose
std::vector<double> untranspose(const std::vector<double>& vt, std::int64_t n) {
  std::vector<double> v(vt.size());
  for (std::int64_t y = 0; y <= n; ++y)
    for (std::int64_t u = 0; u <= n; ++u)
      v[static_cast<std::size_t>(u + (n + 1) * y)] =
          vt[static_cast<std::size_t>(y + (n + 1) * u)];
  return v;
}

}  // namespace

double dirichlet_energy(const EdgeGrid& grid, const std::vector<double>& V) {
  if (static_cast<std::int64_t>(V.size()) != grid.vertex_count())
    throw ValidationError("dirichlet_energy: potential size mismatch");
  const std::int64_t n = grid.n();
  double e = 0.0;
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u < n; ++u)
      if (grid.open_h(u, v)) {
        double d = V[static_cast<std::size_t>(grid.vid(u + 1, v))] -
                   V[static_cast<std::size_t>(grid.vid(u, v))];
        e += d * d;
      }
  for (std::int64_t v = 0; v < n; ++v)
    for (std::int64_t u = 0; u <= n; ++u)
      if (grid.open_v(u, v)) {
        double d = V[static_cast<std::size_t>(grid.vid(u, v + 1))] -
                   V[static_cast<std::size_t>(grid.vid(u, v))];
        e += d * d;
      }
  return e;
}

std::vector<double> ramp_potential(const EdgeGrid& grid, int axis) {
  const std::int64_t n = grid.n();
  std::vector<double> V(static_cast<std::size_t>(grid.vertex_count()));
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u <= n; ++u)
      V[static_cast<std::size_t>(grid.vid(u, v))] =
          static_cast<double>(axis == 0 ? u : v) / static_cast<double>(n);
  return V;
}

DirichletSolution solve_dirichlet(const EdgeGrid& grid, int axis,
                                  const SolveOptions& opts) {
  if (axis != 0 && axis != 1) throw ValidationError("solve: axis must be 0 or 1");
  if (axis == 0) return solve_axis0(grid, opts);
  DirichletSolution sol = solve_axis0(grid.transposed(), opts);
  sol.potential = untranspose(sol.potential, grid.n());
  sol.boundary_axis = 1;
  return sol;
}

DirichletSolution dense_oracle(const EdgeGrid& grid, int axis) {
  if (axis != 0 && axis != 1) throw ValidationError("solve: axis must be 0 or 1");
  if (grid.vertex_count() > kDenseVertexCap)
    throw ValidationError("dense oracle: window exceeds " +
                          std::to_string(kDenseVertexCap) + " vertices");
  if (axis == 1) {
    DirichletSolution sol = dense_oracle(grid.transposed(), 0);
    sol.potential = untranspose(sol.potential, grid.n());
    sol.boundary_axis = 1;
    return sol;
  }

  const std::int64_t n = grid.n();
  const std::int64_t verts = grid.vertex_count();

  // breadth-first component labelling, kept separate from the union-find
  // route on purpose
  std::vector<std::int32_t> comp(static_cast<std::size_t>(verts), -1);
  std::int32_t comp_count = 0;
  std::vector<std::int64_t> queue;
  for (std::int64_t start = 0; start < verts; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    comp[static_cast<std::size_t>(start)] = comp_count;
    queue.assign(1, start);
    while (!queue.empty()) {
      std::int64_t z = queue.back();
      queue.pop_back();
      std::int64_t u = z % (n + 1), v = z / (n + 1);
      auto visit = [&](std::int64_t w) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = comp_count;
          queue.push_back(w);
        }
      };
      if (u < n && grid.open_h(u, v)) visit(grid.vid(u + 1, v));
      if (u > 0 && grid.open_h(u - 1, v)) visit(grid.vid(u - 1, v));
      if (v < n && grid.open_v(u, v)) visit(grid.vid(u, v + 1));
      if (v > 0 && grid.open_v(u, v - 1)) visit(grid.vid(u, v - 1));
    }
    ++comp_count;
  }

  FaceTouch touch = face_touch(grid, comp, comp_count);
  Reduction red = reduce(grid, comp, touch);

  DirichletSolution sol;
  sol.potential = red.potential;
  const std::int64_t m = static_cast<std::int64_t>(red.free_vid.size());
  if (m > 0) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    auto couple = [&](std::int64_t za, std::int64_t zb) {
      std::int64_t ia = red.free_index[static_cast<std::size_t>(za)];
      std::int64_t ib = red.free_index[static_cast<std::size_t>(zb)];
      if (ia < 0 && ib < 0) return;
      if (ia >= 0) A(ia, ia) += 1.0;
      if (ib >= 0) A(ib, ib) += 1.0;
      if (ia >= 0 && ib >= 0) {
        A(ia, ib) -= 1.0;
        A(ib, ia) -= 1.0;
      } else if (ia >= 0) {
        rhs(ia) += red.potential[static_cast<std::size_t>(zb)];
      } else {
        rhs(ib) += red.potential[static_cast<std::size_t>(za)];
      }
    };
    for (std::int64_t v = 0; v <= n; ++v)
      for (std::int64_t u = 0; u < n; ++u)
        if (grid.open_h(u, v)) couple(grid.vid(u, v), grid.vid(u + 1, v));
    for (std::int64_t v = 0; v < n; ++v)
      for (std::int64_t u = 0; u <= n; ++u)
        if (grid.open_v(u, v)) couple(grid.vid(u, v), grid.vid(u, v + 1));

    Eigen::VectorXd x = Eigen::LDLT<Eigen::MatrixXd>(A).solve(rhs);
    for (std::int64_t i = 0; i < m; ++i)
      sol.potential[static_cast<std::size_t>(
          red.free_vid[static_cast<std::size_t>(i)])] = x(i);
    double b_norm = rhs.norm();
    sol.relative_residual = b_norm > 0.0 ? (A * x - rhs).norm() / b_norm : 0.0;
  }
  finish(sol, grid);
  return sol;
}

double harmonic_residual(const DirichletSolution& sol, const EdgeGrid& grid) {
  if (static_cast<std::int64_t>(sol.potential.size()) != grid.vertex_count())
    throw ValidationError("harmonic_residual: potential size mismatch");
  const std::int64_t n = grid.n();
  const std::vector<double>& V = sol.potential;
  double worst = 0.0;
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u <= n; ++u) {
      if (sol.boundary_axis == 0 ? (u == 0 || u == n) : (v == 0 || v == n))
        continue;
      double z = V[static_cast<std::size_t>(grid.vid(u, v))];
      double r = 0.0;
      if (u < n && grid.open_h(u, v))
        r += V[static_cast<std::size_t>(grid.vid(u + 1, v))] - z;
      if (u > 0 && grid.open_h(u - 1, v))
        r += V[static_cast<std::size_t>(grid.vid(u - 1, v))] - z;
      if (v < n && grid.open_v(u, v))
        r += V[static_cast<std::size_t>(grid.vid(u, v + 1))] - z;
      if (v > 0 && grid.open_v(u, v - 1))
        r += V[static_cast<std::size_t>(grid.vid(u, v - 1))] - z;
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

std::vector<double> certificate_potential(const EdgeGrid& grid,
                                          const BadLayerHit& hit) {
  const std::int64_t n = grid.n();
  std::vector<double> V(static_cast<std::size_t>(grid.vertex_count()));
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u <= n; ++u) {
      double t = static_cast<double>(u - hit.x_start) / static_cast<double>(hit.width);
      V[static_cast<std::size_t>(grid.vid(u, v))] = std::clamp(t, 0.0, 1.0);
    }
  return V;
}

LayerCertificate build_test_function(const Realization& real,
                                     const BadLayerHit& hit) {
  const std::int64_t n = real.grid.n();
  if (!hit.fully_inside || hit.x_start < 0 || hit.x_start + hit.width > n)
    throw Error("certificate: layer is clipped by the window");
  const ModelParams& mp = real.spec.params;

  LayerCertificate cert;
  cert.hit = hit;
  cert.open_per_column = count_open_in_layer_column(real, hit);
  cert.test_energy =
      static_cast<double>(cert.open_per_column) / static_cast<double>(hit.width);
  double threshold = threshold_badness(n, mp);
  cert.f_threshold =
      2.0 * static_cast<double>(n) * std::pow(mp.p, threshold);
  cert.bound_value =
      2.0 * std::pow(static_cast<double>(n), 1.0 - 1.0 / gamma_exponent(mp));
  cert.certificate_valid =
      static_cast<double>(hit.badness) >= threshold &&
      static_cast<double>(cert.open_per_column) <= cert.f_threshold;

  if (cert.certificate_valid) {
    // c <= 2 n p^t and width >= ceil(q^(-t(1-sigma))) >= q^(-t(1-sigma))
    // give c/width <= 2 n (p q^(1-sigma))^t = 2 n^(1-1/gamma); re-verify
    if (static_cast<double>(hit.width) < layer_width_real(threshold, mp))
      throw Error("certificate chain violated: layer narrower than the threshold width");
    if (cert.test_energy > cert.bound_value * (1.0 + 1e-12))
      throw Error("certificate chain violated: test energy exceeds the bound");
  }
  return cert;
}

}  // namespace ersl
