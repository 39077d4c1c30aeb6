// Command-line front end over the experiment runner. Every subcommand maps
// onto one ExperimentKind; `sweep` takes the kind from the config file.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ersl/errors.hpp"
#include "ersl/experiment.hpp"

namespace {

struct CliArgs {
  std::string config;
  std::vector<std::int64_t> n;
  std::uint64_t seed = 0;
  std::int64_t reps = 0;
  std::string out;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, CliArgs& args, bool config_required) {
  auto* c = sub->add_option("--config", args.config, "JSON config file");
  if (config_required) c->required();
  sub->add_option("--n", args.n, "window sizes (overrides n_list)");
  sub->add_option("--seed", args.seed, "base seed (overrides seed_base)");
  sub->add_option("--reps", args.reps, "replicates per window size");
  sub->add_option("--out", args.out, "output directory");
  sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
}

ersl::ExperimentConfig demo_config() {
  ersl::ExperimentConfig cfg;
  cfg.params.p = 0.65;
  cfg.params.q = 0.3;
  cfg.params.sigma = 0.25;
  cfg.params.L = 2;
  cfg.n_list = {64};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stretched-lattice percolation toolkit"};
  app.require_subcommand(1);
  CliArgs args;

  CLI::App* c_gen = app.add_subcommand(
      "generate", "write edge lists and cluster labels per (n, replicate)");
  CLI::App* c_cond = app.add_subcommand(
      "conductivity", "solve the two-face Dirichlet problem per (n, replicate)");
  CLI::App* c_events = app.add_subcommand(
      "events", "tabulate bad-layer event frequencies per window size");
  CLI::App* c_density = app.add_subcommand(
      "density", "annealed center-edge open probability per filling level");
  CLI::App* c_walk = app.add_subcommand(
      "walk", "continuous-time random walk displacement curves and fits");
  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "run whatever experiment the config file names");
  for (CLI::App* sub : {c_gen, c_cond, c_events, c_density, c_walk})
    add_common(sub, args, false);
  add_common(c_sweep, args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    ersl::ExperimentConfig cfg =
        args.config.empty() ? demo_config() : ersl::load_config(args.config);
    if (sub == c_gen) cfg.experiment = ersl::ExperimentKind::generate_only;
    if (sub == c_cond) cfg.experiment = ersl::ExperimentKind::conductivity_sweep;
    if (sub == c_events) cfg.experiment = ersl::ExperimentKind::event_frequencies;
    if (sub == c_density) cfg.experiment = ersl::ExperimentKind::edge_density_vs_L;
    if (sub == c_walk) cfg.experiment = ersl::ExperimentKind::walk_msd;
    if (sub == c_sweep && !cfg.experiment)
      throw ersl::ConfigError(
          "config error at /experiment: sweep needs the experiment key");

    if (!args.n.empty()) {
      for (std::size_t i = 0; i < args.n.size(); ++i) {
        if (args.n[i] < 1)
          throw ersl::ConfigError("--n values must be >= 1");
        if (i > 0 && args.n[i] <= args.n[i - 1])
          throw ersl::ConfigError("--n values must be strictly ascending");
      }
      cfg.n_list = args.n;
    }
    if (sub->count("--seed")) cfg.seed_base = args.seed;
    if (sub->count("--reps")) {
      if (args.reps < 1) throw ersl::ConfigError("--reps must be >= 1");
      cfg.replicates = args.reps;
    }
    if (!args.out.empty()) cfg.output_dir = args.out;

    ersl::RunResult result = ersl::run_experiment(cfg, args.threads, &std::cout);
    return result.exit_code;
  } catch (const ersl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
