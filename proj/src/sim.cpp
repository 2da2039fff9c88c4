#include "gelasso/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "gelasso/csv.hpp"
#include "gelasso/errors.hpp"
#include "gelasso/model_selection.hpp"
#include "gelasso/rng.hpp"

namespace gelasso {

const char* const kRecordsHeader =
    "n,gamma,R,data_type,rep,seed,sensitivity,specificity,weight_correlation,"
    "edges_true,edges_est,tp,fp,tn,fn,converged,pd_repaired,elapsed_ms";

const char* data_type_name(DataType t) {
  return t == DataType::normal ? "normal" : "ordinal";
}

long long SimConfig::record_count() const {
  return static_cast<long long>(sample_sizes.size()) * gammas.size() *
         ratios.size() * data_types.size() * replications;
}

void SimConfig::validate() const {
  if (sample_sizes.empty() || gammas.empty() || ratios.empty() ||
      data_types.empty())
    throw InputError("sim config: every condition list must be nonempty");
  if (replications < 1) throw InputError("sim config: replications must be >= 1");
  if (lambda_count < 2) throw InputError("sim config: lambda count must be >= 2");
  if (workers < 1) throw InputError("sim config: workers must be >= 1");
  for (int n : sample_sizes)
    if (n < 2) throw InputError("sim config: sample sizes must be >= 2");
  for (double g : gammas)
    if (!(g >= 0.0)) throw InputError("sim config: gamma must be >= 0");
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0)) throw InputError("sim config: R must lie in (0,1)");
  if (truth_file.empty()) {
    if (synth_p < 2) throw InputError("sim config: p must be >= 2");
    if (!(synth_density > 0.0 && synth_density < 1.0))
      throw InputError("sim config: density must lie in (0,1)");
  }
}

TrueNetwork resolve_truth(const SimConfig& config) {
  if (!config.truth_file.empty()) {
    TrueNetwork net;
    net.network = io::read_network(config.truth_file);
    net.provenance = "file:" + config.truth_file;
    // Fail early if the file's weights do not imply a valid precision.
    pcor_to_covariance(net);
    return net;
  }
  return synthetic_true_network(config.synth_p, config.synth_density,
                                mix64(config.root_seed ^ kSeedTagTruth));
}

SimRecord run_replication(const TrueNetwork& truth,
                          const ReplicationParams& params) {
  SimRecord rec;
  rec.n = params.n;
  rec.gamma = params.gamma;
  rec.ratio = params.ratio;
  rec.data_type = params.data_type;
  rec.rep = params.rep;
  rec.seed = params.seed;
  rec.edges_true = truth.network.edge_count();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Matrix sigma = pcor_to_covariance(truth);
    const Matrix data =
        sample_mvn(sigma, params.n, mix64(params.seed ^ kSeedTagData));

    CorrelationMatrix corr;
    if (params.data_type == DataType::ordinal) {
      const std::uint64_t scheme_seed =
          params.scheme_seed.value_or(mix64(params.seed ^ kSeedTagScheme));
      const OrdinalScheme scheme =
          make_ordinal_scheme(static_cast<int>(sigma.rows()), scheme_seed);
      corr = polychoric_matrix(discretize(data, scheme));
    } else {
      corr = pearson_matrix(data);
    }

    const SelectionResult sel = select_network(
        corr, params.n, params.gamma, params.ratio, params.lambda_count);
    const ComparisonResult cmp = compare_networks(truth.network, sel.network);

    rec.sensitivity = cmp.sensitivity;
    rec.specificity = cmp.specificity;
    rec.weight_correlation = cmp.weight_correlation;
    rec.edges_est = sel.network.edge_count();
    rec.tp = cmp.counts.tp;
    rec.fp = cmp.counts.fp;
    rec.tn = cmp.counts.tn;
    rec.fn = cmp.counts.fn;
    rec.converged = sel.all_converged;
    rec.pd_repaired = corr.repaired || sel.diagonal_loaded;
  } catch (const Error& e) {
    rec.failed = true;
    rec.error = e.what();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.sensitivity = nan;
    rec.specificity = nan;
    rec.weight_correlation = nan;
    rec.edges_est = -1;
    rec.tp = rec.fp = rec.tn = rec.fn = -1;
    rec.converged = false;
    rec.pd_repaired = false;
  }
  rec.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return rec;
}

namespace {

std::string int_or_na(int v) { return v < 0 ? "NA" : std::to_string(v); }

struct Task {
  ReplicationParams params;
};

std::vector<Task> build_tasks(const SimConfig& config) {
  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(config.record_count()));
  for (int n : config.sample_sizes) {
    for (std::size_t gi = 0; gi < config.gammas.size(); ++gi) {
      for (std::size_t ri = 0; ri < config.ratios.size(); ++ri) {
        for (std::size_t ti = 0; ti < config.data_types.size(); ++ti) {
          for (int rep = 0; rep < config.replications; ++rep) {
            ReplicationParams p;
            p.n = n;
            p.gamma = config.gammas[gi];
            p.ratio = config.ratios[ri];
            p.data_type = config.data_types[ti];
            p.rep = rep;
            p.lambda_count = config.lambda_count;
            p.seed = derive_seed(config.root_seed, static_cast<std::uint64_t>(n),
                                 gi, ri,
                                 config.data_types[ti] == DataType::ordinal ? 1 : 0,
                                 static_cast<std::uint64_t>(rep));
            if (!config.redraw_thresholds) {
              // Cuts pinned per condition: replication index held at a
              // sentinel in the derivation.
              p.scheme_seed = mix64(
                  derive_seed(config.root_seed, static_cast<std::uint64_t>(n),
                              gi, ri,
                              config.data_types[ti] == DataType::ordinal ? 1 : 0,
                              0xFFFFFFFFFFFFFFFFULL) ^
                  kSeedTagScheme);
            }
            tasks.push_back({p});
          }
        }
      }
    }
  }
  return tasks;
}

// Count complete, well-formed rows already in the file and verify they are
// the expected prefix of the task order. Returns the resume point.
std::size_t validate_existing(const std::string& path,
                              const std::vector<Task>& tasks,
                              std::vector<std::string>& keep_rows) {
  std::ifstream in(path);
  if (!in) return 0;
  std::string line;
  if (!std::getline(in, line)) return 0;
  if (line != kRecordsHeader)
    throw InputError("resume: '" + path + "' header does not match the records schema");

  std::size_t idx = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (idx >= tasks.size())
      throw InputError("resume: '" + path + "' holds more records than the grid");
    std::vector<std::string> fields;
    fields.reserve(18);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 18) break;  // truncated trailing line: redo it
    const auto& p = tasks[idx].params;
    if (fields[0] != std::to_string(p.n) ||
        fields[3] != data_type_name(p.data_type) ||
        fields[4] != std::to_string(p.rep) ||
        fields[5] != std::to_string(p.seed))
      throw InputError("resume: '" + path +
                       "' row " + std::to_string(idx + 1) +
                       " does not match this config's grid order");
    keep_rows.push_back(line);
    ++idx;
  }
  return idx;
}

}  // namespace

std::string record_to_csv(const SimRecord& r) {
  std::string row;
  row.reserve(160);
  row += std::to_string(r.n);
  row += ',';
  row += io::format_double(r.gamma);
  row += ',';
  row += io::format_double(r.ratio);
  row += ',';
  row += data_type_name(r.data_type);
  row += ',';
  row += std::to_string(r.rep);
  row += ',';
  row += std::to_string(r.seed);
  row += ',';
  row += io::format_metric(r.sensitivity);
  row += ',';
  row += io::format_metric(r.specificity);
  row += ',';
  row += io::format_metric(r.weight_correlation);
  row += ',';
  row += std::to_string(r.edges_true);
  row += ',';
  row += int_or_na(r.edges_est);
  row += ',';
  row += int_or_na(r.tp);
  row += ',';
  row += int_or_na(r.fp);
  row += ',';
  row += int_or_na(r.tn);
  row += ',';
  row += int_or_na(r.fn);
  row += ',';
  row += r.converged ? '1' : '0';
  row += ',';
  row += r.pd_repaired ? '1' : '0';
  row += ',';
  row += io::format_double(r.elapsed_ms);
  return row;
}

std::size_t run_grid(const SimConfig& config, bool resume) {
  config.validate();
  const TrueNetwork truth = resolve_truth(config);
  const std::vector<Task> tasks = build_tasks(config);

  std::vector<std::string> keep_rows;
  std::size_t start = 0;
  if (resume) start = validate_existing(config.out_path, tasks, keep_rows);

  std::ofstream out(config.out_path, std::ios::trunc);
  if (!out)
    throw InputError("cannot open '" + config.out_path + "' for writing");
  out << kRecordsHeader << "\n";
  for (const auto& row : keep_rows) out << row << "\n";
  out.flush();

  if (config.workers <= 1) {
    for (std::size_t i = start; i < tasks.size(); ++i) {
      out << record_to_csv(run_replication(truth, tasks[i].params)) << "\n";
      out.flush();
    }
    return tasks.size();
  }

  // Workers pull tasks; the writer drains results strictly in task order,
  // so the file is identical to a sequential run.
  std::atomic<std::size_t> next{start};
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, SimRecord> ready;
  std::vector<std::thread> pool;
  const int nworkers =
      static_cast<int>(std::min<std::size_t>(config.workers,
                                             tasks.size() - start + 1));
  pool.reserve(nworkers);
  for (int t = 0; t < nworkers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        SimRecord rec = run_replication(truth, tasks[i].params);
        {
          std::lock_guard<std::mutex> lock(mu);
          ready.emplace(i, std::move(rec));
        }
        cv.notify_one();
      }
    });
  }

  std::size_t write_idx = start;
  while (write_idx < tasks.size()) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return ready.count(write_idx) > 0; });
    while (!ready.empty() && ready.begin()->first == write_idx) {
      out << record_to_csv(ready.begin()->second) << "\n";
      ready.erase(ready.begin());
      ++write_idx;
    }
    lock.unlock();
    out.flush();
  }
  for (auto& th : pool) th.join();
  return tasks.size();
}

std::vector<SimRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw EmptyInput("'" + path + "' is empty");
  if (line != kRecordsHeader)
    throw InputError("'" + path + "': unexpected records header");

  const auto parse_metric = [](const std::string& s) {
    if (s == "NA") return std::numeric_limits<double>::quiet_NaN();
    return std::stod(s);
  };
  const auto parse_int_na = [](const std::string& s) {
    return s == "NA" ? -1 : std::stoi(s);
  };

  std::vector<SimRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    f.reserve(18);
    std::size_t startpos = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(startpos, i - startpos));
        startpos = i + 1;
      }
    }
    if (f.size() != 18)
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": expected 18 fields, found " + std::to_string(f.size()));
    try {
      SimRecord r;
      r.n = std::stoi(f[0]);
      r.gamma = std::stod(f[1]);
      r.ratio = std::stod(f[2]);
      if (f[3] == "normal")
        r.data_type = DataType::normal;
      else if (f[3] == "ordinal")
        r.data_type = DataType::ordinal;
      else
        throw InputError("bad data_type '" + f[3] + "'");
      r.rep = std::stoi(f[4]);
      r.seed = std::stoull(f[5]);
      r.sensitivity = parse_metric(f[6]);
      r.specificity = parse_metric(f[7]);
      r.weight_correlation = parse_metric(f[8]);
      r.edges_true = std::stoi(f[9]);
      r.edges_est = parse_int_na(f[10]);
      r.tp = parse_int_na(f[11]);
      r.fp = parse_int_na(f[12]);
      r.tn = parse_int_na(f[13]);
      r.fn = parse_int_na(f[14]);
      r.converged = f[15] == "1";
      r.pd_repaired = f[16] == "1";
      r.elapsed_ms = std::stod(f[17]);
      r.failed = std::isnan(r.sensitivity) && std::isnan(r.specificity) &&
                 r.edges_est < 0;
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": malformed record (" + e.what() + ")");
    }
  }
  return records;
}

BoxplotStats boxplot_stats(std::vector<double> values, int n_missing) {
  BoxplotStats stats;
  stats.n_missing = n_missing;
  stats.n_total = static_cast<int>(values.size()) + n_missing;
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    stats.median = stats.q1 = stats.q3 = nan;
    stats.whisker_lo = stats.whisker_hi = nan;
    return stats;
  }
  std::sort(values.begin(), values.end());
  const auto quantile = [&](double q) {
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  };
  stats.q1 = quantile(0.25);
  stats.median = quantile(0.5);
  stats.q3 = quantile(0.75);
  const double iqr = stats.q3 - stats.q1;
  const double lo_fence = stats.q1 - 1.5 * iqr;
  const double hi_fence = stats.q3 + 1.5 * iqr;
  stats.whisker_lo = stats.q3;
  stats.whisker_hi = stats.q1;
  bool any_in = false;
  for (double v : values) {
    if (v >= lo_fence && v <= hi_fence) {
      if (!any_in) {
        stats.whisker_lo = v;
        stats.whisker_hi = v;
        any_in = true;
      } else {
        stats.whisker_lo = std::min(stats.whisker_lo, v);
        stats.whisker_hi = std::max(stats.whisker_hi, v);
      }
    } else {
      stats.outliers.push_back(v);
    }
  }
  return stats;
}

std::vector<SummaryRow> summarize(const std::vector<SimRecord>& records) {
  if (records.empty()) throw EmptyInput("summarize: no records");

  std::set<int> ns;
  std::set<double> gammas, ratios;
  std::set<int> types;
  for (const auto& r : records) {
    ns.insert(r.n);
    gammas.insert(r.gamma);
    ratios.insert(r.ratio);
    types.insert(r.data_type == DataType::ordinal ? 1 : 0);
  }

  struct MetricDef {
    const char* name;
    double SimRecord::* field;
  };
  static const MetricDef metrics[] = {
      {"sensitivity", &SimRecord::sensitivity},
      {"specificity", &SimRecord::specificity},
      {"weight_correlation", &SimRecord::weight_correlation},
  };

  std::vector<SummaryRow> rows;
  for (const auto& metric : metrics) {
    for (int n : ns) {
      for (double g : gammas) {
        for (double ratio : ratios) {
          for (int t : types) {
            const DataType type = t ? DataType::ordinal : DataType::normal;
            std::vector<double> values;
            int missing = 0;
            bool cell_exists = false;
            for (const auto& r : records) {
              if (r.n != n || r.gamma != g || r.ratio != ratio ||
                  r.data_type != type)
                continue;
              cell_exists = true;
              const double v = r.*(metric.field);
              if (std::isnan(v))
                ++missing;
              else
                values.push_back(v);
            }
            if (!cell_exists) continue;  // sparse grids: skip empty cells
            SummaryRow row;
            row.metric = metric.name;
            row.n = n;
            row.gamma = g;
            row.ratio = ratio;
            row.data_type = type;
            row.stats = boxplot_stats(std::move(values), missing);
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << "metric,n,gamma,R,data_type,n_total,n_missing,median,q1,q3,"
         "whisker_lo,whisker_hi,n_outliers\n";
  for (const auto& row : rows) {
    out << row.metric << ',' << row.n << ',' << io::format_double(row.gamma)
        << ',' << io::format_double(row.ratio) << ','
        << data_type_name(row.data_type) << ',' << row.stats.n_total << ','
        << row.stats.n_missing << ',' << io::format_metric(row.stats.median)
        << ',' << io::format_metric(row.stats.q1) << ','
        << io::format_metric(row.stats.q3) << ','
        << io::format_metric(row.stats.whisker_lo) << ','
        << io::format_metric(row.stats.whisker_hi) << ','
        << row.stats.outliers.size() << "\n";
  }
}

}  // namespace gelasso
