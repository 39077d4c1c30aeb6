#include "ersl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "ersl/cluster.hpp"
#include "ersl/events.hpp"
#include "ersl/io.hpp"
#include "ersl/rng.hpp"
#include "json_internal.hpp"

namespace ersl {

namespace {
constexpr const char* kArtifactVersion = "ersl 0.1.0";
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::conductivity_sweep: return "conductivity_sweep";
    case ExperimentKind::event_frequencies: return "event_frequencies";
    case ExperimentKind::edge_density_vs_L: return "edge_density_vs_L";
    case ExperimentKind::walk_msd: return "walk_msd";
    case ExperimentKind::generate_only: return "generate_only";
  }
  throw Error("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "conductivity_sweep") return ExperimentKind::conductivity_sweep;
  if (name == "event_frequencies") return ExperimentKind::event_frequencies;
  if (name == "edge_density_vs_L") return ExperimentKind::edge_density_vs_L;
  if (name == "walk_msd") return ExperimentKind::walk_msd;
  if (name == "generate_only") return ExperimentKind::generate_only;
  throw ConfigError("unknown experiment kind: " + name);
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& ptr, const std::string& what) {
  throw ConfigError("config error at " + (ptr.empty() ? "/" : ptr) + ": " + what);
}

void check_keys(const json& j, const std::string& ptr,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(ptr, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&key](const char* a) {
          return key == a;
        }) == allowed.end())
      bad(ptr + "/" + key, "unknown key");
  }
}

double num_field(const json& j, const std::string& ptr, const char* key,
                 double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) bad(ptr + "/" + key, "expected a number");
  return j.at(key).get<double>();
}

std::int64_t int_field(const json& j, const std::string& ptr, const char* key,
                       std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15)
      return static_cast<std::int64_t>(d);
    bad(ptr + "/" + key, "expected an integer, got a fractional value");
  }
  bad(ptr + "/" + key, "expected an integer");
}

std::string str_field(const json& j, const std::string& ptr, const char* key,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) bad(ptr + "/" + key, "expected a string");
  return j.at(key).get<std::string>();
}

bool bool_field(const json& j, const std::string& ptr, const char* key,
                bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) bad(ptr + "/" + key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::vector<std::int64_t> int_list_field(const json& j, const std::string& ptr,
                                         const char* key) {
  const json& v = j.at(key);
  if (!v.is_array()) bad(ptr + "/" + key, "expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& e = v.at(i);
    if (!e.is_number_integer())
      bad(ptr + "/" + key + "/" + std::to_string(i), "expected an integer");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

bool layered_kind(ModelKind kind) {
  return kind == ModelKind::rsl_plain ||
         kind == ModelKind::rsl_elongated_unfilled || kind == ModelKind::ersl;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config error at /: ") + e.what());
  }
  check_keys(j, "",
             {"experiment", "model", "params", "params_mode", "pmf_convention",
              "n_list", "seed_base", "replicates", "output_dir", "L_list",
              "p0", "column_dist", "column_value", "solver", "walk",
              "edge_cap"});

  ExperimentConfig cfg;
  cfg.canonical = j.dump();
  if (j.contains("experiment"))
    cfg.experiment =
        experiment_kind_from_string(str_field(j, "", "experiment", ""));
  cfg.kind = model_kind_from_string(str_field(j, "", "model", "ersl"));

  std::string mode = str_field(j, "", "params_mode", "strict");
  if (mode == "strict")
    cfg.strictness = Strictness::strict;
  else if (mode == "conductivity_only")
    cfg.strictness = Strictness::conductivity_only;
  else
    bad("/params_mode", "expected \"strict\" or \"conductivity_only\"");

  if (layered_kind(cfg.kind)) {
    if (!j.contains("params")) bad("/params", "missing required key");
    cfg.params = parse_params_object(j.at("params"), "/params");
    std::string conv = str_field(j, "", "pmf_convention", "definition");
    if (conv == "definition")
      cfg.params.convention = PmfConvention::definition;
    else if (conv == "series")
      cfg.params.convention = PmfConvention::series;
    else
      bad("/pmf_convention", "expected \"definition\" or \"series\"");
    try {
      validate(cfg.params, cfg.strictness);
    } catch (const ValidationError& e) {
      bad("/params", e.what());
    }
  } else if (j.contains("params")) {
    cfg.params = parse_params_object(j.at("params"), "/params");
  }

  if (!j.contains("n_list")) bad("/n_list", "missing required key");
  cfg.n_list = int_list_field(j, "", "n_list");
  if (cfg.n_list.empty()) bad("/n_list", "must be nonempty");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1)
      bad("/n_list/" + std::to_string(i), "window sizes must be >= 1");
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
      bad("/n_list/" + std::to_string(i), "must be strictly ascending");
  }

  std::int64_t seed = int_field(j, "", "seed_base", 0);
  cfg.seed_base = static_cast<std::uint64_t>(seed);
  cfg.replicates = int_field(j, "", "replicates", 1);
  if (cfg.replicates < 1) bad("/replicates", "must be >= 1");
  cfg.output_dir = str_field(j, "", "output_dir", "out");
  cfg.edge_cap = int_field(j, "", "edge_cap", cfg.edge_cap);

  if (j.contains("L_list")) {
    cfg.L_list = int_list_field(j, "", "L_list");
    if (cfg.L_list.empty()) bad("/L_list", "must be nonempty");
    for (std::size_t i = 0; i < cfg.L_list.size(); ++i) {
      if (cfg.L_list[i] < 0)
        bad("/L_list/" + std::to_string(i), "filling levels must be >= 0");
      if (i > 0 && cfg.L_list[i] <= cfg.L_list[i - 1])
        bad("/L_list/" + std::to_string(i), "must be strictly ascending");
    }
  }

  cfg.p0 = num_field(j, "", "p0", cfg.p0);
  if (!(cfg.p0 >= 0.0 && cfg.p0 <= 1.0)) bad("/p0", "must be in [0,1]");
  std::string dist = str_field(j, "", "column_dist", "uniform");
  if (dist == "uniform")
    cfg.column_dist = ColumnDist::uniform01;
  else if (dist == "fixed")
    cfg.column_dist = ColumnDist::fixed;
  else
    bad("/column_dist", "expected \"uniform\" or \"fixed\"");
  cfg.column_value = num_field(j, "", "column_value", cfg.column_value);
  if (!(cfg.column_value >= 0.0 && cfg.column_value <= 1.0))
    bad("/column_value", "must be in [0,1]");

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s, "/solver", {"tol", "max_iter", "jacobi"});
    cfg.solver.tol = num_field(s, "/solver", "tol", cfg.solver.tol);
    if (!(cfg.solver.tol > 0.0)) bad("/solver/tol", "must be > 0");
    cfg.solver.max_iter = int_field(s, "/solver", "max_iter", cfg.solver.max_iter);
    if (cfg.solver.max_iter < 0) bad("/solver/max_iter", "must be >= 0");
    cfg.solver.jacobi = bool_field(s, "/solver", "jacobi", cfg.solver.jacobi);
  }

  if (j.contains("walk")) {
    const json& w = j.at("walk");
    check_keys(w, "/walk",
               {"walkers", "t_min", "t_max", "sample_count", "fit_t_min",
                "fit_t_max", "boundary", "start_u", "start_v"});
    cfg.walk.walkers = int_field(w, "/walk", "walkers", cfg.walk.walkers);
    if (cfg.walk.walkers < 1) bad("/walk/walkers", "must be >= 1");
    cfg.walk.t_min = num_field(w, "/walk", "t_min", cfg.walk.t_min);
    cfg.walk.t_max = num_field(w, "/walk", "t_max", cfg.walk.t_max);
    if (!(cfg.walk.t_min > 0.0) || !(cfg.walk.t_max >= cfg.walk.t_min))
      bad("/walk/t_max", "need 0 < t_min <= t_max");
    cfg.walk.sample_count = static_cast<int>(
        int_field(w, "/walk", "sample_count", cfg.walk.sample_count));
    if (cfg.walk.sample_count < 1) bad("/walk/sample_count", "must be >= 1");
    cfg.walk.fit_t_min = num_field(w, "/walk", "fit_t_min", cfg.walk.fit_t_min);
    cfg.walk.fit_t_max = num_field(w, "/walk", "fit_t_max", cfg.walk.fit_t_max);
    if (!(cfg.walk.fit_t_min > 0.0) ||
        !(cfg.walk.fit_t_max >= cfg.walk.fit_t_min))
      bad("/walk/fit_t_max", "need 0 < fit_t_min <= fit_t_max");
    std::string b = str_field(w, "/walk", "boundary", "absorb");
    if (b == "absorb")
      cfg.walk.boundary = BoundaryPolicy::absorb;
    else if (b == "reject")
      cfg.walk.boundary = BoundaryPolicy::reject;
    else
      bad("/walk/boundary", "expected \"absorb\" or \"reject\"");
    cfg.walk.start_u = int_field(w, "/walk", "start_u", cfg.walk.start_u);
    cfg.walk.start_v = int_field(w, "/walk", "start_v", cfg.walk.start_v);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

namespace {

namespace fs = std::filesystem;

struct RowTask {
  std::int64_t n = 0;
  std::int64_t replicate = 0;
  std::uint64_t seed = 0;
  std::int64_t L = -1;  // edge_density_vs_L only
};

struct RowOutput {
  std::string csv;  // conductivity line
  bool E = false, F = false;
  double estimate = 0.0, se = 0.0;  // density
  std::string name_a, text_a;       // per-row files
  std::string name_b, text_b;
};

RealizationSpec base_spec(const ExperimentConfig& cfg) {
  RealizationSpec spec;
  spec.params = cfg.params;
  spec.kind = cfg.kind;
  spec.strictness = cfg.strictness;
  spec.p0 = cfg.p0;
  spec.column_dist = cfg.column_dist;
  spec.column_value = cfg.column_value;
  spec.edge_cap = cfg.edge_cap;
  return spec;
}

std::vector<RowTask> make_rows(const ExperimentConfig& cfg) {
  std::vector<RowTask> rows;
  if (cfg.experiment == ExperimentKind::edge_density_vs_L) {
    for (std::int64_t L : cfg.L_list)
      rows.push_back({cfg.n_list.front(), 0, cfg.seed_base, L});
    return rows;
  }
  for (std::int64_t n : cfg.n_list)
    for (std::int64_t r = 0; r < cfg.replicates; ++r)
      rows.push_back({n, r,
                      seed_for(cfg.seed_base, static_cast<std::uint64_t>(r),
                               static_cast<std::uint64_t>(n), role::generate),
                      -1});
  return rows;
}

std::string row_suffix(const RowTask& t) {
  return "n" + std::to_string(t.n) + "_r" + std::to_string(t.replicate);
}

RowOutput compute_conductivity(const ExperimentConfig& cfg, const RowTask& t) {
  RealizationSpec spec = base_spec(cfg);
  spec.n = t.n;
  spec.seed = t.seed;
  Realization real = generate_window(spec);
  SolveOptions opts{cfg.solver.tol, cfg.solver.max_iter, cfg.solver.jacobi};
  DirichletSolution sol = solve_dirichlet(real.grid, 0, opts);

  std::ostringstream line;
  line << to_string(cfg.kind) << "," << t.n << "," << t.seed << ","
       << format_double(sol.energy) << "," << format_double(sol.normalized_energy)
       << "," << sol.iterations << "," << format_double(sol.relative_residual);
  if (real.layered()) {
    EventResult ev = event_E_and_F(real);
    line << "," << (ev.E ? 1 : 0) << "," << (ev.F ? 1 : 0);
    double bound = 2.0 * std::pow(static_cast<double>(t.n),
                                  1.0 - 1.0 / gamma_exponent(cfg.params));
    if (ev.witness.hit) {
      LayerCertificate cert = build_test_function(real, *ev.witness.hit);
      // the solver result can never beat the explicit test function
      if (sol.energy > cert.test_energy * (1.0 + 1e-9) + 1e-12)
        throw Error("variational violation: solved energy " +
                    format_double(sol.energy) + " above test energy " +
                    format_double(cert.test_energy));
      line << "," << cert.hit.badness << "," << cert.hit.width << ","
           << format_double(cert.test_energy) << "," << format_double(bound);
    } else {
      line << ",,,," << format_double(bound);
    }
  } else {
    line << ",,,,,,";
  }
  RowOutput out;
  out.csv = line.str();
  return out;
}

RowOutput compute_events(const ExperimentConfig& cfg, const RowTask& t) {
  RealizationSpec spec = base_spec(cfg);
  spec.n = t.n;
  spec.seed = t.seed;
  Realization real = generate_window(spec);
  EventResult ev = event_E_and_F(real);
  RowOutput out;
  out.E = ev.E;
  out.F = ev.F;
  return out;
}

RowOutput compute_density(const ExperimentConfig& cfg, const RowTask& t) {
  RealizationSpec spec = base_spec(cfg);
  spec.n = t.n;
  spec.seed = cfg.seed_base;
  spec.params.L = t.L;
  AnnealedEstimate est = annealed_edge_open_probability(spec, cfg.replicates);
  RowOutput out;
  out.estimate = est.estimate;
  out.se = est.se;
  return out;
}

RowOutput compute_walk(const ExperimentConfig& cfg, const RowTask& t) {
  RealizationSpec spec = base_spec(cfg);
  spec.n = t.n;
  spec.seed = t.seed;
  Realization real = generate_window(spec);

  WalkConfig wc;
  wc.n_walkers = cfg.walk.walkers;
  wc.t_max = cfg.walk.t_max;
  wc.sample_times =
      geometric_times(cfg.walk.t_min, cfg.walk.t_max, cfg.walk.sample_count);
  wc.start_u = cfg.walk.start_u;
  wc.start_v = cfg.walk.start_v;
  wc.boundary = cfg.walk.boundary;
  wc.seed = seed_for(cfg.seed_base, static_cast<std::uint64_t>(t.replicate),
                     static_cast<std::uint64_t>(t.n), role::walk_batch);
  MsdCurve curve = simulate_walks(real.grid, wc);

  std::ostringstream msd;
  msd << "t,msd_mean,msd_se,survivors\n";
  for (const MsdPoint& pt : curve.points)
    msd << format_double(pt.t) << "," << format_double(pt.mean) << ","
        << format_double(pt.se) << "," << pt.survivors << "\n";

  json fit_doc;
  try {
    ExponentFit fit = fit_exponent(curve, cfg.walk.fit_t_min, cfg.walk.fit_t_max);
    fit_doc["slope"] = fit.slope;
    fit_doc["slope_se"] = fit.slope_se;
    fit_doc["fit_t_min"] = fit.fit_t_min;
    fit_doc["fit_t_max"] = fit.fit_t_max;
    fit_doc["walkers"] = curve.walkers;
  } catch (const ValidationError& e) {
    fit_doc["error"] = e.what();
  }

  RowOutput out;
  out.name_a = "msd_" + row_suffix(t) + ".csv";
  out.text_a = msd.str();
  out.name_b = "msd_" + row_suffix(t) + ".fit.json";
  out.text_b = fit_doc.dump(2) + "\n";
  return out;
}

RowOutput compute_generate(const ExperimentConfig& cfg, const RowTask& t) {
  RealizationSpec spec = base_spec(cfg);
  spec.n = t.n;
  spec.seed = t.seed;
  Realization real = generate_window(spec);

  std::ostringstream edges, clusters;
  write_edge_list(edges, real);
  write_cluster_csv(clusters, real.grid, cluster(real.grid));

  RowOutput out;
  out.name_a = "edges_" + row_suffix(t) + ".txt";
  out.text_a = edges.str();
  out.name_b = "clusters_" + row_suffix(t) + ".csv";
  out.text_b = clusters.str();
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ERSL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("ERSL_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string hash_hex(const std::string& text) {
  std::uint64_t h = mix64(text.size());
  for (char c : text) h = hash_combine(h, static_cast<unsigned char>(c));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double binomial_se(double f, std::int64_t m) {
  return m > 0 ? std::sqrt(f * (1.0 - f) / static_cast<double>(m)) : 0.0;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, unsigned threads,
                         std::ostream* log) {
  if (!cfg.experiment) throw ConfigError("config error at /experiment: missing");
  const ExperimentKind kind = *cfg.experiment;
  if (kind == ExperimentKind::edge_density_vs_L && cfg.kind != ModelKind::ersl)
    throw ConfigError(
        "config error at /model: edge_density_vs_L requires the ersl model");

  const std::string started = utc_now();
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<RowTask> rows = make_rows(cfg);
  std::vector<RowOutput> outputs(rows.size());
  std::vector<RowRecord> records(rows.size());

  auto compute = [&](const RowTask& t) {
    switch (kind) {
      case ExperimentKind::conductivity_sweep: return compute_conductivity(cfg, t);
      case ExperimentKind::event_frequencies: return compute_events(cfg, t);
      case ExperimentKind::edge_density_vs_L: return compute_density(cfg, t);
      case ExperimentKind::walk_msd: return compute_walk(cfg, t);
      case ExperimentKind::generate_only: return compute_generate(cfg, t);
    }
    throw Error("unknown experiment kind");
  };

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= rows.size()) return;
      RowRecord& rec = records[i];
      rec.index = static_cast<std::int64_t>(i);
      rec.n = rows[i].n;
      rec.replicate = rows[i].replicate;
      rec.seed = rows[i].seed;
      if (rows[i].L >= 0) rec.replicate = rows[i].L;  // density rows vary L
      auto t0 = std::chrono::steady_clock::now();
      try {
        outputs[i] = compute(rows[i]);
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      rec.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    }
  };
  unsigned nthreads =
      std::min<std::size_t>(resolve_threads(threads), rows.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  fs::create_directories(cfg.output_dir);
  const fs::path dir = cfg.output_dir;

  // commit phase: single-threaded, in deterministic order
  if (kind == ExperimentKind::conductivity_sweep) {
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (rows[a].n != rows[b].n) return rows[a].n < rows[b].n;
      return rows[a].seed < rows[b].seed;
    });
    std::ostringstream csv;
    csv << "model,n,seed,energy,normalized_energy,cg_iters,residual,E_event,"
           "F_event,badness,layer_width,test_energy,bound_2n_pow\n";
    for (std::size_t i : order)
      if (!records[i].failed) csv << outputs[i].csv << "\n";
    write_file(dir / "conductivity.csv", csv.str());
  } else if (kind == ExperimentKind::event_frequencies) {
    std::ostringstream csv;
    csv << "n,replicates,freq_E,se_E,freq_EF,se_EF,cond_F_given_E,"
           "chebyshev_ceiling\n";
    for (std::int64_t n : cfg.n_list) {
      std::int64_t m = 0, cE = 0, cEF = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].n != n || records[i].failed) continue;
        ++m;
        cE += outputs[i].E;
        cEF += outputs[i].E && outputs[i].F;
      }
      double fE = m > 0 ? static_cast<double>(cE) / static_cast<double>(m) : 0.0;
      double fEF = m > 0 ? static_cast<double>(cEF) / static_cast<double>(m) : 0.0;
      double cheb = 1.0 / (std::pow(cfg.params.p, threshold_badness(n, cfg.params)) *
                           static_cast<double>(n));
      csv << n << "," << m << "," << format_double(fE) << ","
          << format_double(binomial_se(fE, m)) << "," << format_double(fEF)
          << "," << format_double(binomial_se(fEF, m)) << ",";
      if (cE > 0) csv << format_double(fEF / fE);
      csv << "," << format_double(cheb) << "\n";
    }
    write_file(dir / "events.csv", csv.str());
  } else if (kind == ExperimentKind::edge_density_vs_L) {
    std::ostringstream csv;
    csv << "L,replicates,estimate,se\n";
    std::int64_t first_reaching = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (records[i].failed) continue;
      csv << rows[i].L << "," << cfg.replicates << ","
          << format_double(outputs[i].estimate) << ","
          << format_double(outputs[i].se) << "\n";
      if (first_reaching < 0 && outputs[i].estimate >= 0.9)
        first_reaching = rows[i].L;
    }
    write_file(dir / "density.csv", csv.str());
    if (log) {
      if (first_reaching >= 0)
        *log << "smallest tested L with estimate >= 0.9: " << first_reaching
             << "\n";
      else
        *log << "no tested L reaches estimate >= 0.9\n";
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (records[i].failed) continue;
      write_file(dir / outputs[i].name_a, outputs[i].text_a);
      write_file(dir / outputs[i].name_b, outputs[i].text_b);
    }
  }

  RunResult result;
  result.manifest.artifact_version = kArtifactVersion;
  result.manifest.config_hash = hash_hex(cfg.canonical);
  result.manifest.experiment = to_string(kind);
  result.manifest.rows = records;
  for (const RowRecord& rec : records)
    result.manifest.failed_rows += rec.failed;
  result.exit_code = result.manifest.failed_rows > 0 ? 1 : 0;

  json manifest;
  manifest["artifact"] = kArtifactVersion;
  manifest["config_hash"] = result.manifest.config_hash;
  manifest["experiment"] = result.manifest.experiment;
  manifest["failed_rows"] = result.manifest.failed_rows;
  manifest["rows"] = json::array();
  for (const RowRecord& rec : records) {
    json row;
    row["row"] = rec.index;
    row["n"] = rec.n;
    row[kind == ExperimentKind::edge_density_vs_L ? "L" : "replicate"] =
        rec.replicate;
    row["seed"] = std::to_string(rec.seed);
    row["status"] = rec.failed ? "failed" : "ok";
    if (rec.failed) row["error"] = rec.error;
    manifest["rows"].push_back(row);
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  json timing;
  timing["started"] = started;
  timing["finished"] = utc_now();
  timing["total_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();
  timing["row_wall_ms"] = json::array();
  for (const RowRecord& rec : records) timing["row_wall_ms"].push_back(rec.wall_ms);
  write_file(dir / "timings.json", timing.dump(2) + "\n");

  if (log) {
    for (const RowRecord& rec : records)
      if (rec.failed)
        *log << "row " << rec.index << " (n=" << rec.n << ") failed: "
             << rec.error << "\n";
    *log << to_string(kind) << ": " << rows.size() - result.manifest.failed_rows
         << "/" << rows.size() << " rows ok, outputs in " << dir.string()
         << "\n";
  }
  return result;
}

}  // namespace ersl
