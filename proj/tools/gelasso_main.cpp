#include <CLI11.hpp>

#include "gelasso/commands.hpp"
#include "gelasso/kernels.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "gelasso: Gaussian graphical model estimation via EBIC-selected "
      "graphical lasso, with a Monte-Carlo simulation harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("gelasso 1.0 (simd: ") +
                                        gelasso::kern::level_name(
                                            gelasso::kern::active_level()) +
                                        ")");

  gelasso::cli::EstimateOptions est;
  auto* estimate = app.add_subcommand(
      "estimate", "Estimate a partial-correlation network from a dataset CSV");
  estimate->add_option("data", est.data_path, "input dataset CSV (header row)")
      ->required();
  estimate->add_option("--network-out", est.network_out, "network matrix CSV")
      ->capture_default_str();
  estimate->add_option("--trace-out", est.trace_out, "EBIC trace CSV")
      ->capture_default_str();
  estimate->add_option("--gamma", est.gamma, "EBIC hyperparameter")
      ->capture_default_str();
  estimate->add_option("--ratio", est.ratio, "lambda_min/lambda_max ratio R")
      ->capture_default_str();
  estimate->add_option("--nlambda", est.lambda_count, "penalty grid size m")
      ->capture_default_str();
  estimate
      ->add_option("--max-levels", est.max_levels,
                   "max distinct integer levels for ordinal auto-detection")
      ->capture_default_str();
  estimate->add_flag("--ordinal", est.force_ordinal,
                     "force the polychoric path");
  estimate->add_flag("--continuous", est.force_continuous,
                     "force the Pearson path");
  estimate->add_flag("--quiet", est.quiet, "suppress progress output");

  gelasso::cli::GenerateOptions gen;
  auto* generate = app.add_subcommand(
      "generate", "Write a ground-truth network and (optionally) sampled data");
  generate->add_option("--p", gen.p, "number of nodes")->capture_default_str();
  generate->add_option("--density", gen.density, "target edge density")
      ->capture_default_str();
  generate
      ->add_option("--cutoff", gen.cutoff,
                   "absolute weight cutoff applied to loaded truths")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  generate->add_option("--n", gen.n, "also sample a dataset with n rows")
      ->capture_default_str();
  generate->add_flag("--ordinal", gen.ordinal,
                     "discretize the dataset to 5 ordinal levels");
  generate->add_option("--truth-in", gen.truth_in,
                       "load a truth file instead of synthesizing");
  generate->add_option("--truth-out", gen.truth_out, "truth file to write")
      ->capture_default_str();
  generate->add_option("--data-out", gen.data_out, "dataset file to write")
      ->capture_default_str();
  generate->add_flag("--quiet", gen.quiet, "suppress progress output");

  gelasso::cli::SimulateOptions sim;
  auto* simulate =
      app.add_subcommand("simulate", "Run a simulation grid from a config file");
  simulate->add_option("config", sim.config_path, "key = value config file")
      ->required();
  simulate->add_option("--out", sim.out_override, "records CSV (overrides config)");
  simulate
      ->add_option("--workers", sim.workers_override,
                   "worker threads (overrides config and GELASSO_WORKERS)")
      ->capture_default_str();
  simulate->add_flag("--resume", sim.resume,
                     "continue a partially written records CSV");
  simulate->add_flag("--quiet", sim.quiet, "suppress progress output");

  gelasso::cli::SummarizeOptions sum;
  auto* summarize = app.add_subcommand(
      "summarize", "Boxplot summary CSV and SVG panels from a records CSV");
  summarize->add_option("records", sum.records_path, "records CSV from simulate")
      ->required();
  summarize->add_option("--out-dir", sum.out_dir, "output directory")
      ->capture_default_str();
  summarize->add_flag("--quiet", sum.quiet, "suppress progress output");

  CLI11_PARSE(app, argc, argv);

  if (estimate->parsed()) return gelasso::cli::cmd_estimate(est);
  if (generate->parsed()) return gelasso::cli::cmd_generate(gen);
  if (simulate->parsed()) return gelasso::cli::cmd_simulate(sim);
  if (summarize->parsed()) return gelasso::cli::cmd_summarize(sum);
  return 1;
}
