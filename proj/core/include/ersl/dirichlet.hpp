#pragma once

#include <cstdint>
#include <vector>

#include "ersl/events.hpp"
#include "ersl/generate.hpp"
#include "ersl/grid.hpp"

namespace ersl {

struct SolveOptions {
  double tol = 1e-10;         // relative residual target
  std::int64_t max_iter = 0;  // 0 picks 20 (n+1)^2
  bool jacobi = true;         // diagonal preconditioner
};

struct DirichletSolution {
  std::vector<double> potential;  // per vertex, vid order
  double energy = 0.0;            // sum over open edges of (dV)^2, each edge once
  double normalized_energy = 0.0; // n^(2-d) * energy
  std::int64_t iterations = 0;
  double relative_residual = 0.0;
  int boundary_axis = 0;
};

// Minimizes the per-edge Dirichlet energy over potentials with V = 0 on the
// axis-low face and V = 1 on the axis-high face. Components touching neither
// face sit at 0, one face at that face's value; components bridging both
// faces are solved by conjugate gradient on the Dirichlet-reduced graph
// Laplacian. Throws SolverError (with iteration count and residual) if the
// tolerance is not reached.
DirichletSolution solve_dirichlet(const EdgeGrid& grid, int axis = 0,
                                  const SolveOptions& opts = {});

// Same minimization by dense factorization, assembled and classified by an
// independent code path (breadth-first search, full matrix). Reference
// implementation for small windows; requires (n+1)^2 <= 10^4.
DirichletSolution dense_oracle(const EdgeGrid& grid, int axis = 0);

// Energy of an arbitrary potential (must satisfy the boundary conditions the
// caller cares about; no check here).
double dirichlet_energy(const EdgeGrid& grid, const std::vector<double>& V);

// The linear interpolation V(u,v) = u/n (or v/n for axis 1); always a member
// of the constrained class, so its energy is an upper bound for the minimum.
std::vector<double> ramp_potential(const EdgeGrid& grid, int axis = 0);

// max over vertices off the constrained faces of |sum over open neighbor
// edges of (V(neighbor) - V(z))|; zero for an exact minimizer
double harmonic_residual(const DirichletSolution& sol, const EdgeGrid& grid);

struct LayerCertificate {
  BadLayerHit hit;
  std::int64_t open_per_column = 0;  // c
  double test_energy = 0.0;          // c / width, exactly
  double f_threshold = 0.0;          // 2 n p^threshold
  double bound_value = 0.0;          // 2 n^(1 - 1/gamma)
  bool certificate_valid = false;    // c <= f_threshold
};

// The explicit potential that is 0 left of the bad layer, 1 right of it, and
// climbs linearly across its width. Its energy is exactly c/width where c is
// the per-column open count, and when the certificate is valid the chain
// c <= 2 n p^threshold, width >= ceil(q^(-threshold (1-sigma))) pins
// test_energy <= 2 n^(1 - 1/gamma). The chain is re-verified here and a
// violation throws.
LayerCertificate build_test_function(const Realization& real,
                                     const BadLayerHit& hit);

// The certificate's potential as a vector (for direct energy evaluation).
std::vector<double> certificate_potential(const EdgeGrid& grid,
                                          const BadLayerHit& hit);

}  // namespace ersl
