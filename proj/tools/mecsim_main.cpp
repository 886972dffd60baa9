// Command-line front end: scenario configs in, CSV/JSON study results out.
//
// Subcommands
//   simulate        one episode per configured policy -> metrics.json (+ trace.csv)
//   sweep           axis study (n_md | n_es | alpha)  -> sweep.csv
//   pareto          latency/energy trade-off grid     -> pareto.csv
//   convergence     price trajectories per step size  -> convergence_eta_<v>.csv
//   oracle-compare  pricing vs exhaustive optimum     -> oracle_compare.json
//
// All randomness flows from the config seed (or --seed); episode streams are
// derived by counter-splitting, so repeated invocations with identical flags
// produce byte-identical files.  Failures emit one JSON object {"error": ...}
// on stderr and a nonzero exit code.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mecsim/config_io.hpp"
#include "mecsim/parallel.hpp"
#include "mecsim/sweep.hpp"
#include "mecsim/textio.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "Scenario config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", args.out_dir, "Output directory (created if missing)");
  sub->add_option("--set", args.sets,
                  "Config override key=value (repeatable; dots descend into nested keys)");
  sub->add_option("--seed", args.seed, "Master seed override")
      ->each([&args](const std::string&) { args.seed_given = true; });
  sub->add_option("--threads", args.threads, "Worker thread cap (0 = library default)");
}

mecsim::LoadedConfig load(const CommonArgs& args) {
  mecsim::LoadedConfig lc = mecsim::load_config(args.config_path, args.sets);
  if (args.seed_given) lc.scenario.seed = args.seed;
  if (args.threads > 0) mecsim::set_threads(args.threads);
  return lc;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) / name).string();
}

void write_csv(const CommonArgs& args, const std::string& name, const mecsim::CsvTable& t) {
  const std::string path = out_path(args, name);
  mecsim::write_text_file(path, t.to_string());
  std::cout << "wrote " << path << "\n";
}

void write_json(const CommonArgs& args, const std::string& name, const nlohmann::json& j) {
  const std::string path = out_path(args, name);
  mecsim::write_text_file(path, j.dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
}

int run_simulate(const CommonArgs& args) {
  const auto lc = load(args);
  const mecsim::SimulateResult r = mecsim::simulate(lc.scenario, lc.catalog);
  write_json(args, "metrics.json", r.metrics);
  if (r.trace) write_csv(args, "trace.csv", *r.trace);
  return 0;
}

int run_sweep(const CommonArgs& args, const std::string& axis,
              const std::vector<double>& values) {
  const auto lc = load(args);
  const mecsim::CsvTable t =
      mecsim::sweep_table(lc.scenario, lc.catalog, mecsim::axis_from_string(axis), values);
  write_csv(args, "sweep.csv", t);
  return 0;
}

int run_pareto(const CommonArgs& args, std::vector<double> eps_grid,
               std::vector<double> alpha_grid) {
  const auto lc = load(args);
  if (eps_grid.empty())
    for (int k = 0; k <= 10; ++k) eps_grid.push_back(k / 10.0);
  if (alpha_grid.empty()) alpha_grid.push_back(lc.scenario.alpha);
  write_csv(args, "pareto.csv", mecsim::pareto_table(lc.scenario, lc.catalog, eps_grid, alpha_grid));
  return 0;
}

int run_convergence(const CommonArgs& args, const std::vector<double>& etas) {
  const auto lc = load(args);
  std::set<double> seen;
  for (double eta : etas) {
    if (!(eta > 0.0))
      throw std::invalid_argument("step size must be positive: " + mecsim::format_double(eta));
    if (!seen.insert(eta).second)
      throw std::invalid_argument("duplicate step size: " + mecsim::format_double(eta));
  }
  for (double eta : etas) {
    const mecsim::CsvTable t = mecsim::convergence_table(lc.scenario, lc.catalog, eta);
    write_csv(args, "convergence_eta_" + mecsim::format_double(eta) + ".csv", t);
  }
  return 0;
}

int run_oracle_compare(const CommonArgs& args) {
  const auto lc = load(args);
  write_json(args, "oracle_compare.json", mecsim::oracle_compare_json(lc.scenario, lc.catalog));
  return 0;
}

int fail(const std::string& message) {
  nlohmann::json err;
  err["error"] = message;
  std::cerr << err.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge offloading studies: pricing-based association with "
               "closed-form bandwidth/core splits"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string axis;
  std::vector<double> values, eps_grid, alpha_grid;
  std::vector<double> etas = {0.001, 0.01, 0.05};

  CLI::App* sim = app.add_subcommand("simulate", "One episode per configured policy");
  add_common_options(sim, args);

  CLI::App* swp = app.add_subcommand("sweep", "Axis study over n_md, n_es, or alpha");
  add_common_options(swp, args);
  swp->add_option("--axis", axis, "Sweep axis: n_md, n_es, or alpha")->required();
  swp->add_option("--values", values, "Axis values (comma separated or repeated)")
      ->required()
      ->delimiter(',');

  CLI::App* par = app.add_subcommand("pareto", "Latency/energy trade-off grid");
  add_common_options(par, args);
  par->add_option("--eps-grid", eps_grid,
                  "Local-compute probabilities for the heuristics (default 0,0.1,...,1)")
      ->delimiter(',');
  par->add_option("--alpha-grid", alpha_grid,
                  "Energy weights for the pricing policy (default: config alpha)")
      ->delimiter(',');

  CLI::App* cnv = app.add_subcommand("convergence", "Dual ascent price trajectories");
  add_common_options(cnv, args);
  cnv->add_option("--etas", etas, "Step sizes, one trace file each")->delimiter(',');

  CLI::App* orc = app.add_subcommand("oracle-compare", "Pricing vs exhaustive optimum");
  add_common_options(orc, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    return fail(std::string("argument error: ") + e.what());
  }

  try {
    if (sim->parsed()) return run_simulate(args);
    if (swp->parsed()) return run_sweep(args, axis, values);
    if (par->parsed()) return run_pareto(args, eps_grid, alpha_grid);
    if (cnv->parsed()) return run_convergence(args, etas);
    if (orc->parsed()) return run_oracle_compare(args);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return fail("no subcommand selected");
}
