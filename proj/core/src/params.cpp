#include "ersl/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json_internal.hpp"

namespace ersl {

namespace {

constexpr double kWidthLimit = 9007199254740992.0;  // 2^53

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

double gamma_exponent(const ModelParams& p) {
  return 1.0 / std::sqrt((1.0 - p.sigma) + std::log(p.p) / std::log(p.q));
}

DerivedConstants validate(const ModelParams& p, Strictness strictness) {
  require(std::isfinite(p.p) && p.p > 0.0 && p.p < 1.0,
          "p out of range: need 0 < p < 1");
  require(std::isfinite(p.q) && p.q > 0.0 && p.q < 1.0,
          "q out of range: need 0 < q < 1");
  require(std::isfinite(p.sigma) && p.sigma > 0.0 && p.sigma < 1.0,
          "sigma out of range: need 0 < sigma < 1");
  require(p.L >= 0, "L out of range: need L >= 0");
  require(p.d >= 2, "d out of range: need d >= 2");

  DerivedConstants out;
  if (p.q >= p.p) {
    if (strictness == Strictness::strict)
      throw ValidationError("q >= p: the stretched-lattice assumption needs q < p");
    out.stretch_assumption_relaxed = true;
  }
  require(std::pow(p.q, p.sigma) > p.p, "q^sigma <= p: need q^sigma > p");

  out.gamma = gamma_exponent(p);
  // q^sigma > p makes (1-sigma) + ln p/ln q > 1, so gamma lands in (0,1)
  require(out.gamma > 0.0 && out.gamma < 1.0, "gamma outside (0,1)");
  out.mean_layer_width = mean_layer_width(p);
  out.percolation_unverified = true;
  return out;
}

std::int64_t layer_width(std::int64_t ell, const ModelParams& p) {
  require(ell >= 0, "layer_width: ell must be >= 0");
  double w = layer_width_real(static_cast<double>(ell), p);
  if (!(w <= kWidthLimit))
    throw ValidationError("layer_width overflow: width exceeds 2^53");
  return static_cast<std::int64_t>(w);
}

double layer_width_real(double ell, const ModelParams& p) {
  return std::ceil(std::exp(-ell * (1.0 - p.sigma) * std::log(p.q)));
}

double threshold_badness(std::int64_t n, const ModelParams& p) {
  require(n >= 1, "threshold_badness: n must be >= 1");
  return gamma_exponent(p) * std::log(static_cast<double>(n)) /
         std::log(1.0 / p.q);
}

double plain_pmf(std::int64_t ell, const ModelParams& p) {
  if (p.convention == PmfConvention::definition) {
    if (ell < 1) return 0.0;
    return (1.0 - p.q) * std::pow(p.q, static_cast<double>(ell - 1));
  }
  if (ell < 0) return 0.0;
  return (1.0 - p.q) * std::pow(p.q, static_cast<double>(ell));
}

double mean_layer_width_with(const ModelParams& p,
                             const std::function<double(std::int64_t)>& width,
                             double tol) {
  require(tol > 0.0, "mean_layer_width: tol must be > 0");
  const double q = p.q, qs = std::pow(p.q, p.sigma);
  const std::int64_t first = p.convention == PmfConvention::definition ? 1 : 0;
  double total = 0.0;
  for (std::int64_t ell = first;; ++ell) {
    total += plain_pmf(ell, p) * width(ell);
    // remaining mass bound: sum_{j>ell} pmf(j) (q^{-j(1-sigma)} + 1).
    // Both pieces are geometric; ratio q^sigma and q respectively.
    double shift = p.convention == PmfConvention::definition ? 1.0 / q : 1.0;
    double tail =
        (1.0 - q) * shift *
        (std::pow(qs, static_cast<double>(ell + 1)) / (1.0 - qs) +
         std::pow(q, static_cast<double>(ell + 1)) / (1.0 - q));
    if (tail < tol) return total;
  }
}

double mean_layer_width(const ModelParams& p, double tol) {
  return mean_layer_width_with(
      p, [&p](std::int64_t l) { return layer_width_real(static_cast<double>(l), p); },
      tol);
}

double size_biased_pmf_with(std::int64_t ell, const ModelParams& p,
                            const std::function<double(std::int64_t)>& width,
                            double tol) {
  double base = plain_pmf(ell, p);
  if (base == 0.0) return 0.0;
  return width(ell) * base / mean_layer_width_with(p, width, tol);
}

double size_biased_pmf(std::int64_t ell, const ModelParams& p, double tol) {
  return size_biased_pmf_with(
      ell, p,
      [&p](std::int64_t l) { return layer_width_real(static_cast<double>(l), p); },
      tol);
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& ptr, const std::string& what) {
  throw ConfigError("config error at " + ptr + ": " + what);
}

double number_at(const json& j, const std::string& ptr, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) bad_key(ptr + "/" + key, "expected a number");
  return v.get<double>();
}

std::int64_t integer_at(const json& j, const std::string& ptr,
                        const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15)
      return static_cast<std::int64_t>(d);
    bad_key(ptr + "/" + key, "expected an integer, got a fractional value");
  }
  bad_key(ptr + "/" + key, "expected an integer");
}

}  // namespace

ModelParams parse_params_object(const nlohmann::json& j, const std::string& ptr) {
  if (!j.is_object()) bad_key(ptr, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "p" && key != "q" && key != "sigma" && key != "L" && key != "d")
      bad_key(ptr + "/" + key, "unknown key");
  }
  for (const char* key : {"p", "q", "sigma", "L"}) {
    if (!j.contains(key)) bad_key(ptr + "/" + key, "missing required key");
  }
  ModelParams out;
  out.p = number_at(j, ptr, "p");
  out.q = number_at(j, ptr, "q");
  out.sigma = number_at(j, ptr, "sigma");
  out.L = integer_at(j, ptr, "L");
  out.d = j.contains("d") ? static_cast<int>(integer_at(j, ptr, "d")) : 2;
  return out;
}

ModelParams params_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config error at /: ") + e.what());
  }
  return parse_params_object(j, "");
}

std::string params_to_json(const ModelParams& p) {
  json j;
  j["p"] = p.p;
  j["q"] = p.q;
  j["sigma"] = p.sigma;
  j["L"] = p.L;
  j["d"] = p.d;
  return j.dump();
}

}  // namespace ersl
