#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "ersl/errors.hpp"

namespace ersl {

// Column/row badness pmf convention.
//
//   definition: P(N = l) = (1-q) q^(l-1), support l >= 1. This is the tail
//               law P(N >= l+1) = q^l and the default everywhere.
//   series:     P(N = l) = (1-q) q^l, support l >= 0. Kept behind this switch
//               for sensitivity checks; it shifts the support down by one.
enum class PmfConvention { definition, series };

struct ModelParams {
  double p = 0.0;      // edge retention base, in (0,1)
  double q = 0.0;      // badness tail ratio, in (0,1)
  double sigma = 0.0;  // elongation exponent, in (0,1), with q^sigma > p
  std::int64_t L = 0;  // filling level, >= 0
  int d = 2;           // dimension (only d=2 is generated in this release)
  PmfConvention convention = PmfConvention::definition;
};

// strict enforces the percolation-side assumption q < p on top of the
// geometric constraints; conductivity_only drops it (energy decay and walk
// experiments are meaningful for q >= p as long as q^sigma > p).
enum class Strictness { strict, conductivity_only };

struct DerivedConstants {
  double gamma = 0.0;             // 1/sqrt((1-sigma) + ln p / ln q), in (0,1)
  double mean_layer_width = 0.0;  // E[S(N)] under params.convention
  bool percolation_unverified = true;   // q <= q_c is never checked
  bool stretch_assumption_relaxed = false;  // q >= p accepted (non-strict)
};

// Throws ValidationError naming the violated inequality.
DerivedConstants validate(const ModelParams& params,
                          Strictness strictness = Strictness::strict);

double gamma_exponent(const ModelParams& params);

// S(l) = ceil(q^(-l(1-sigma))), l >= 0 integer. Throws ValidationError once
// the width exceeds exactly-representable integer range (2^53).
std::int64_t layer_width(std::int64_t ell, const ModelParams& params);

// same map extended to real arguments (threshold badness is real-valued)
double layer_width_real(double ell, const ModelParams& params);

// l_n = gamma * ln n / ln(1/q); real, never rounded. n >= 1.
double threshold_badness(std::int64_t n, const ModelParams& params);

// E[S(N)] by truncated series; truncation error below tol via the geometric
// tail bound (the summand tail is dominated by q^(sigma*l) terms).
double mean_layer_width(const ModelParams& params, double tol = 1e-12);

// P(N = l) under params.convention.
double plain_pmf(std::int64_t ell, const ModelParams& params);

// P(N'_0 = l) = S(l) P(N = l) / E[S(N)]
double size_biased_pmf(std::int64_t ell, const ModelParams& params,
                       double tol = 1e-12);

// Internal versions with an injectable width map; the public functions bind
// width = layer_width. Tests use these to cross-check against stub widths
// (e.g. S == 1 must reduce size-biasing to the plain pmf).
double mean_layer_width_with(const ModelParams& params,
                             const std::function<double(std::int64_t)>& width,
                             double tol);
double size_biased_pmf_with(std::int64_t ell, const ModelParams& params,
                            const std::function<double(std::int64_t)>& width,
                            double tol);

// JSON document with keys exactly {p, q, sigma, L, d}; d optional (default
// 2), unknown keys rejected, integer fields rejected if fractional.
// Errors carry a JSON pointer.
ModelParams params_from_json(const std::string& text);
std::string params_to_json(const ModelParams& params);

}  // namespace ersl
