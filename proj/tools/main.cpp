#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oblab/audit.hpp"
#include "oblab/scenario.hpp"

namespace {

int do_run(const std::string& config_path) {
  oblab::ScenarioConfig cfg = oblab::load_config(config_path);
  oblab::RunReport rep = oblab::run_scenario(cfg);
  oblab::emit_report(rep, cfg.out_dir);
  for (const auto& d : rep.deviations)
    std::fprintf(stderr, "deviation: %s\n", d.c_str());
  std::printf("%s: %s (report in %s)\n", cfg.scenario.c_str(),
              rep.deviations.empty() ? "expectations met" : "VERDICT DEVIATION",
              cfg.out_dir.c_str());
  return oblab::exit_code(rep);
}

int do_audit(std::uint64_t seed, long long scalars, long long matrices) {
  auto results = oblab::run_property_audit(seed, scalars, matrices);
  std::printf("%-40s %10s %9s %14s\n", "suite", "samples", "failures",
              "max_violation");
  for (const auto& r : results)
    std::printf("%-40s %10lld %9lld %14.3e%s\n", r.name.c_str(), r.samples,
                r.failures, r.max_violation,
                r.report_only ? "  (report only)" : "");
  bool ok = oblab::audit_passed(results);
  std::printf("property audit (seed %llu): %s\n",
              static_cast<unsigned long long>(seed), ok ? "PASS" : "FAIL");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-flat bundle laboratory: curvature and Chern-character "
               "obstructions from almost-multiplicative unitary maps"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  run->add_option("config", config_path, "config file (JSON)")->required();

  std::uint64_t seed = 42;
  long long scalars = 100000, matrices = 1000;
  auto* audit = app.add_subcommand("audit", "run the randomized property suites");
  audit->add_option("--seed", seed, "RNG seed");
  audit->add_option("--scalar-samples", scalars, "scalar sample count");
  audit->add_option("--matrix-samples", matrices, "matrix/form sample count");

  std::string scenario = "z2-voiculescu-sweep", out_dir = "out";
  std::vector<int> n_list;
  int grid = 0, order = 0, threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a scenario with overrides");
  sweep->add_option("--scenario", scenario, "scenario name")
      ->check(CLI::IsMember(oblab::scenario_names()));
  sweep->add_option("--n", n_list, "rep sizes, comma separated")->delimiter(',');
  sweep->add_option("--grid", grid, "per-axis grid resolution");
  sweep->add_option("--order", order, "difference stencil order (2 or 4)");
  sweep->add_option("--threads", threads, "BLAS thread count");
  sweep->add_option("--out", out_dir, "output directory");

  std::string show_name;
  auto* show = app.add_subcommand("config", "print a scenario's default config");
  show->add_option("scenario", show_name, "scenario name")
      ->required()
      ->check(CLI::IsMember(oblab::scenario_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(config_path);
    if (*audit) return do_audit(seed, scalars, matrices);
    if (*show) {
      std::printf("%s", oblab::config_to_json_text(
                            oblab::default_config(show_name)).c_str());
      return 0;
    }
    if (*sweep) {
      oblab::ScenarioConfig cfg = oblab::default_config(scenario);
      if (!n_list.empty()) cfg.n_list = n_list;
      if (grid > 0) cfg.grid = grid;
      if (order > 0) cfg.order = order;
      if (threads > 0) cfg.threads = threads;
      cfg.out_dir = out_dir;
      oblab::validate_config(cfg);
      oblab::RunReport rep = oblab::run_scenario(cfg);
      oblab::emit_report(rep, cfg.out_dir);
      for (const auto& d : rep.deviations)
        std::fprintf(stderr, "deviation: %s\n", d.c_str());
      std::printf("%s: %s (report in %s)\n", cfg.scenario.c_str(),
                  rep.deviations.empty() ? "expectations met"
                                         : "VERDICT DEVIATION",
                  cfg.out_dir.c_str());
      return oblab::exit_code(rep);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
