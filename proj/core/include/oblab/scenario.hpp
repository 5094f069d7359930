#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oblab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "obstruction-lab 0.1.0";

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string scenario;
  std::vector<int> n_list = {8, 16, 32, 64};  // rep sizes, strictly increasing
  int grid = 64;                              // per-axis T^2 resolution
  std::vector<int> resolutions = {32, 64, 128};  // refinement study grids
  int audit_grid = 6;                         // per-axis T^4 audit resolution
  int z4_n = 16;                              // flagship block size
  int z4_audit_n = 4;                         // block size for the T^4 audit
  double overhang = 1.0 / 12.0 - 1.0 / 750.0;  // 0.0832, widened transition
  double beta = 0.5;
  int order = 4;  // difference stencil order
  double gap_tol = 0.05;
  std::uint64_t seed = 42;
  long long scalar_samples = 100000;
  long long matrix_samples = 1000;
  int threads = 1;
  std::string out_dir = "out";
};

// JSON round trip; load validates (see validate_config)
ScenarioConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& c);
ScenarioConfig load_config(const std::string& path);

// named defaults for the shipped scenarios; throws on unknown name
ScenarioConfig default_config(const std::string& scenario);
std::vector<std::string> scenario_names();

void validate_config(const ScenarioConfig& c);

struct RunReport {
  ScenarioConfig config;
  std::string body_json;  // scenario results, serialized deterministically
  std::map<std::string, std::string> tables;      // filename -> CSV text
  std::map<std::string, std::string> plot_files;  // filename -> gnuplot text
  std::vector<std::string> deviations;  // verdict/expectation mismatches
  std::vector<std::pair<std::string, double>> timings;  // step -> seconds
};

// deterministic given config (and seed, for property-audit); wall times land
// in RunReport::timings only, never in the report body
RunReport run_scenario(const ScenarioConfig& c);

// writes report.json, the CSV tables, the gnuplot .dat files and timing.log
void emit_report(const RunReport& r, const std::string& out_dir);

// 0 = expectations met, 2 = verdict deviation (execution errors throw)
int exit_code(const RunReport& r);

}  // namespace oblab
