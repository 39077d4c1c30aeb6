#include "ersl/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace ersl {

std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

void write_edge_list(std::ostream& out, const Realization& real) {
  const EdgeGrid& grid = real.grid;
  const RealizationSpec& spec = real.spec;
  const std::int64_t n = grid.n();
  // the p field doubles as p0 for the bernoulli kind; the reader undoes this
  double p = spec.kind == ModelKind::bernoulli ? spec.p0 : spec.params.p;
  out << "# ersl v1 d=2 n=" << n << " model=" << to_string(spec.kind)
      << " seed=" << spec.seed << " p=" << format_double(p)
      << " q=" << format_double(spec.params.q)
      << " sigma=" << format_double(spec.params.sigma) << " L=" << spec.params.L
      << "\n";
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u < n; ++u)
      if (grid.open_h(u, v)) out << "H " << u << " " << v << "\n";
  for (std::int64_t v = 0; v < n; ++v)
    for (std::int64_t u = 0; u <= n; ++u)
      if (grid.open_v(u, v)) out << "V " << u << " " << v << "\n";
}

namespace {

[[noreturn]] void bad_edge_file(const std::string& what) {
  throw ConfigError("edge list: " + what);
}

// "key=value" -> value, validating the key
std::string take_field(std::istringstream& in, const std::string& key) {
  std::string tok;
  if (!(in >> tok) || tok.rfind(key + "=", 0) != 0)
    bad_edge_file("expected " + key + "=... in header");
  return tok.substr(key.size() + 1);
}

}  // namespace

Realization read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) bad_edge_file("empty input");
  std::istringstream header(line);
  std::string hash, tag, version;
  header >> hash >> tag >> version;
  if (hash != "#" || tag != "ersl" || version != "v1")
    bad_edge_file("unsupported header: " + line);
  if (take_field(header, "d") != "2") bad_edge_file("only d=2 is supported");

  RealizationSpec spec;
  try {
    spec.n = std::stoll(take_field(header, "n"));
    spec.kind = model_kind_from_string(take_field(header, "model"));
    spec.seed = std::stoull(take_field(header, "seed"));
    spec.params.p = std::stod(take_field(header, "p"));
    spec.params.q = std::stod(take_field(header, "q"));
    spec.params.sigma = std::stod(take_field(header, "sigma"));
    spec.params.L = std::stoll(take_field(header, "L"));
  } catch (const std::logic_error&) {
    bad_edge_file("malformed header value in: " + line);
  }
  if (spec.kind == ModelKind::bernoulli) spec.p0 = spec.params.p;
  if (spec.n < 1) bad_edge_file("n out of range");

  Realization real{spec, EdgeGrid(spec.n), std::nullopt, std::nullopt};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string kind;
    std::int64_t u, v;
    if (!(row >> kind >> u >> v) || (kind != "H" && kind != "V"))
      bad_edge_file("malformed edge line: " + line);
    bool horizontal = kind == "H";
    std::int64_t u_max = horizontal ? spec.n - 1 : spec.n;
    std::int64_t v_max = horizontal ? spec.n : spec.n - 1;
    if (u < 0 || u > u_max || v < 0 || v > v_max)
      bad_edge_file("edge out of range: " + line);
    if (horizontal)
      real.grid.set_h(u, v, true);
    else
      real.grid.set_v(u, v, true);
  }
  return real;
}

void write_cluster_csv(std::ostream& out, const EdgeGrid& grid,
                       const ClusterReport& report) {
  out << "vertex_u,vertex_v,component_id\n";
  const std::int64_t n = grid.n();
  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u <= n; ++u)
      out << u << "," << v << ","
          << report.component_id[static_cast<std::size_t>(grid.vid(u, v))]
          << "\n";
}

}  // namespace ersl
