#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergm/motif.hpp"
#include "ergm/stein.hpp"

namespace ergm {

// Parsed experiment configuration. Sections mirror the library modules; the
// schema is strict and unknown keys are rejected. CLI flags override the
// seed, output directory and worker count.
struct ExperimentConfig {
  ErgmSpec spec;

  // phase
  int phase_grid = 4096;
  double phase_tol = 1e-11;
  struct BetaScan {
    int motif_index = 0;
    double lo = 0, hi = 0;
    int count = 1;
  };
  std::vector<BetaScan> phase_scan;  // optional regime-map grid

  // dynamics
  std::vector<int> sizes{32};
  long long burn_in = -1;
  double thinning_sweeps = 1;
  int samples = 2000;
  int replicas = 1;
  std::string init = "erdos_renyi";
  double init_p = -1;  // -1: auto (p_star)
  bool well_enabled = false;
  double well_p = -1;  // -1: auto (global maximizer)
  double well_eta = 0.08;
  int well_index = -1;  // attracting fixed point index; -1: global

  // observables (column list for the sample command)
  std::vector<std::string> observable_names{"edge_count", "degree:0"};

  // hajek
  std::string hajek_motif = "triangle";
  bool hajek_rooted = false;
  int hajek_rho = 0;
  int hajek_vertex = 0;

  // couple
  double couple_horizon_sweeps = 8;
  int couple_replicas = 100;

  // stein
  SteinMode stein_mode = SteinMode::EdgeCount;
  int stein_vertex = 0;

  // oracle
  int oracle_n = 4;
  bool oracle_dump = false;

  std::uint64_t seed = 1;
  int workers = 0;  // 0: ERGM_WORKERS env or hardware concurrency
  std::string out_dir = "out";

  nlohmann::json resolved;  // echo for the manifest
};

// Parses and validates a config file; throws std::runtime_error with a
// descriptive message on schema violations.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const nlohmann::json& j);

MotifGraph motif_from_json(const nlohmann::json& j);
MotifGraph motif_from_name(const std::string& name);

}  // namespace ergm
