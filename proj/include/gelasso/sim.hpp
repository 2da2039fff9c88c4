#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gelasso/generation.hpp"
#include "gelasso/metrics.hpp"

namespace gelasso {

enum class DataType { normal, ordinal };

const char* data_type_name(DataType t);

// Full factorial simulation design plus execution knobs.
struct SimConfig {
  std::vector<int> sample_sizes;
  std::vector<double> gammas;
  std::vector<double> ratios;
  std::vector<DataType> data_types;
  int replications = 1;
  int lambda_count = 100;
  std::uint64_t root_seed = 1;

  std::string truth_file;  // empty -> synthetic truth below
  int synth_p = 25;
  double synth_density = 125.0 / 300.0;

  bool redraw_thresholds = true;  // fresh ordinal cuts each replication
  int workers = 1;
  std::string out_path = "records.csv";

  // Grid size as arithmetic, without running anything.
  long long record_count() const;
  void validate() const;
};

// One replication's outcome. Metrics are NaN and count fields -1 when the
// estimator failed; the record still exists (failures are data).
struct SimRecord {
  int n = 0;
  double gamma = 0.0;
  double ratio = 0.0;
  DataType data_type = DataType::normal;
  int rep = 0;
  std::uint64_t seed = 0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double weight_correlation = 0.0;
  int edges_true = 0;
  int edges_est = -1;
  int tp = -1, fp = -1, tn = -1, fn = -1;
  bool converged = false;
  bool pd_repaired = false;
  double elapsed_ms = 0.0;
  bool failed = false;
  std::string error;  // not serialized; for logs/tests
};

extern const char* const kRecordsHeader;

struct ReplicationParams {
  int n = 100;
  double gamma = 0.5;
  double ratio = 0.01;
  DataType data_type = DataType::normal;
  std::uint64_t seed = 1;
  int lambda_count = 100;
  int rep = 0;
  // Ordinal cut seed; defaults to a value derived from `seed` (the
  // redraw-per-replication behavior). Pin it per condition to hold
  // thresholds fixed across replications.
  std::optional<std::uint64_t> scheme_seed;
};

// Generate -> estimate -> compare for a single cell; deterministic given
// the params. Estimator failures land in the record, never escape.
SimRecord run_replication(const TrueNetwork& truth, const ReplicationParams& params);

// Executes the whole grid in deterministic order (n, gamma, R, type, rep
// nesting), writing records CSV incrementally. Completed rows form a
// prefix of that order, which is what makes --resume a line count. Returns
// the total number of records in the file.
std::size_t run_grid(const SimConfig& config, bool resume = false);

// Resolve the config's truth source (file or synthetic-from-root-seed).
TrueNetwork resolve_truth(const SimConfig& config);

std::string record_to_csv(const SimRecord& r);
std::vector<SimRecord> read_records(const std::string& path);

// Tukey boxplot statistics; quartiles are type-7 (linear interpolation
// between order statistics), whiskers the most extreme points within
// 1.5 IQR of the quartiles.
struct BoxplotStats {
  double median = 0.0, q1 = 0.0, q3 = 0.0;
  double whisker_lo = 0.0, whisker_hi = 0.0;
  std::vector<double> outliers;
  int n_total = 0;
  int n_missing = 0;
};

BoxplotStats boxplot_stats(std::vector<double> values, int n_missing = 0);

struct SummaryRow {
  std::string metric;
  int n = 0;
  double gamma = 0.0;
  double ratio = 0.0;
  DataType data_type = DataType::normal;
  BoxplotStats stats;
};

std::vector<SummaryRow> summarize(const std::vector<SimRecord>& records);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

}  // namespace gelasso
