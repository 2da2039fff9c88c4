#pragma once

#include <cstdint>
#include <string>

#include "gelasso/sim.hpp"

// Subcommand implementations behind the CLI front end. Each returns the
// process exit code: 0 success, 1 input error, 2 numerical failure.
namespace gelasso::cli {

struct EstimateOptions {
  std::string data_path;
  std::string network_out = "network.csv";
  std::string trace_out = "ebic_trace.csv";
  double gamma = 0.5;
  double ratio = 0.01;
  int lambda_count = 100;
  int max_levels = 10;      // ordinal auto-detection bound
  bool force_ordinal = false;
  bool force_continuous = false;
  bool quiet = false;
};

struct GenerateOptions {
  int p = 25;
  double density = 125.0 / 300.0;
  double cutoff = 0.05;
  std::uint64_t seed = 1;
  int n = 0;  // > 0: also write a sampled dataset
  bool ordinal = false;
  std::string truth_in;   // load instead of synthesizing
  std::string truth_out = "truth.csv";
  std::string data_out = "data.csv";
  bool quiet = false;
};

struct SimulateOptions {
  std::string config_path;
  std::string out_override;
  int workers_override = 0;  // 0 = keep config/env value
  bool resume = false;
  bool quiet = false;
};

struct SummarizeOptions {
  std::string records_path;
  std::string out_dir = ".";
  bool quiet = false;
};

int cmd_estimate(const EstimateOptions& options);
int cmd_generate(const GenerateOptions& options);
int cmd_simulate(const SimulateOptions& options);
int cmd_summarize(const SummarizeOptions& options);

// Flat key=value config parser for `simulate`; see README for the keys.
// Worker precedence: --workers flag, then the config key, then
// GELASSO_WORKERS, then 1.
SimConfig parse_sim_config(const std::string& path);

}  // namespace gelasso::cli
