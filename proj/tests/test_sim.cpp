#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "gelasso/errors.hpp"
#include "gelasso/rng.hpp"
#include "gelasso/sim.hpp"
#include "gelasso/svg.hpp"

using namespace gelasso;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/gelasso_test_") + name;
}

// File contents with the elapsed_ms column blanked, for determinism
// comparisons.
std::string strip_elapsed(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto last_comma = line.rfind(',');
    out << line.substr(0, last_comma) << "\n";
  }
  return out.str();
}

SimConfig tiny_config(const std::string& out_name) {
  SimConfig config;
  config.sample_sizes = {60, 120};
  config.gammas = {0.5};
  config.ratios = {0.1};
  config.data_types = {DataType::normal, DataType::ordinal};
  config.replications = 2;
  config.lambda_count = 12;
  config.root_seed = 404;
  config.synth_p = 6;
  config.synth_density = 0.35;
  config.out_path = temp_path(out_name);
  return config;
}

}  // namespace

TEST_CASE("derive_seed is stable and collision-averse across the grid") {
  // Pinned values: this derivation is a documented contract, so a change
  // here is a breaking change to record reproducibility.
  CHECK(derive_seed(1, 50, 0, 0, 0, 0) == derive_seed(1, 50, 0, 0, 0, 0));
  CHECK(derive_seed(1, 50, 0, 0, 0, 0) != derive_seed(2, 50, 0, 0, 0, 0));
  CHECK(derive_seed(1, 50, 0, 0, 0, 0) != derive_seed(1, 100, 0, 0, 0, 0));
  CHECK(derive_seed(1, 50, 1, 0, 0, 0) != derive_seed(1, 50, 0, 1, 0, 0));
  CHECK(derive_seed(1, 50, 0, 0, 1, 0) != derive_seed(1, 50, 0, 0, 0, 1));

  std::vector<std::uint64_t> seen;
  for (int n : {50, 100, 250})
    for (int g = 0; g < 5; ++g)
      for (int r = 0; r < 3; ++r)
        for (int t = 0; t < 2; ++t)
          for (int rep = 0; rep < 4; ++rep)
            seen.push_back(derive_seed(7, n, g, r, t, rep));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("record_count is pure arithmetic over the grid shape") {
  SimConfig paper;
  paper.sample_sizes = {50, 100, 250, 500, 1000, 2500};
  paper.gammas = {0.0, 0.25, 0.5, 0.75, 1.0};
  paper.ratios = {0.001, 0.01, 0.1};
  paper.data_types = {DataType::normal, DataType::ordinal};
  paper.replications = 1000;
  CHECK(paper.record_count() == 180000);

  SimConfig desk;
  desk.sample_sizes = {50, 100, 250};
  desk.gammas = {0.0, 0.5};
  desk.ratios = {0.01};
  desk.data_types = {DataType::normal, DataType::ordinal};
  desk.replications = 50;
  CHECK(desk.record_count() == 600);
}

TEST_CASE("run_replication is deterministic given the seed") {
  const TrueNetwork truth = synthetic_true_network(6, 0.35, 11);
  ReplicationParams params;
  params.n = 80;
  params.gamma = 0.5;
  params.ratio = 0.1;
  params.data_type = DataType::ordinal;
  params.seed = 99;
  params.lambda_count = 15;

  const SimRecord a = run_replication(truth, params);
  const SimRecord b = run_replication(truth, params);
  CHECK(a.sensitivity == b.sensitivity);
  CHECK(a.specificity == b.specificity);
  CHECK(a.weight_correlation == b.weight_correlation);
  CHECK(a.edges_est == b.edges_est);
  CHECK(a.tp == b.tp);
  CHECK(a.seed == b.seed);
  CHECK(!a.failed);
  CHECK(a.edges_true == truth.network.edge_count());
}

TEST_CASE("run_replication records estimator failures instead of throwing") {
  // A single-edge truth cannot fail, but a constant ordinal column can:
  // force it with an extreme scheme via a tiny sample and a huge seed
  // search is flaky, so instead drive the failure through an impossible
  // sample size contract: n=2 with ordinal data frequently yields constant
  // columns; scan a few seeds and require at least one clean failure path.
  const TrueNetwork truth = synthetic_true_network(5, 0.3, 77);
  bool saw_failure = false, saw_success = false;
  for (std::uint64_t seed = 1; seed <= 40 && !(saw_failure && saw_success);
       ++seed) {
    ReplicationParams params;
    params.n = 3;
    params.gamma = 0.5;
    params.ratio = 0.1;
    params.data_type = DataType::ordinal;
    params.seed = seed;
    params.lambda_count = 5;
    const SimRecord rec = run_replication(truth, params);
    if (rec.failed) {
      saw_failure = true;
      CHECK(std::isnan(rec.sensitivity));
      CHECK(rec.edges_est == -1);
      CHECK(!rec.converged);
      CHECK(!rec.error.empty());
    } else {
      saw_success = true;
    }
  }
  CHECK(saw_failure);
}

TEST_CASE("run_grid writes the documented schema in deterministic order") {
  const SimConfig config = tiny_config("grid_a.csv");
  const std::size_t total = run_grid(config);
  CHECK(total == 8);

  const auto records = read_records(config.out_path);
  REQUIRE(records.size() == 8);
  // Nesting order: n, gamma, R, type, rep.
  CHECK(records[0].n == 60);
  CHECK(records[0].data_type == DataType::normal);
  CHECK(records[0].rep == 0);
  CHECK(records[1].rep == 1);
  CHECK(records[2].data_type == DataType::ordinal);
  CHECK(records[4].n == 120);
  for (const auto& r : records) {
    CHECK(r.edges_true > 0);
    CHECK(r.seed == derive_seed(config.root_seed, r.n,
                                0, 0,
                                r.data_type == DataType::ordinal ? 1 : 0,
                                r.rep));
  }

  std::ifstream in(config.out_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kRecordsHeader);
}

TEST_CASE("run_grid reruns byte-identically modulo elapsed time") {
  SimConfig config = tiny_config("grid_b1.csv");
  run_grid(config);
  const std::string first = strip_elapsed(config.out_path);
  config.out_path = temp_path("grid_b2.csv");
  run_grid(config);
  CHECK(first == strip_elapsed(config.out_path));
}

TEST_CASE("run_grid with multiple workers matches the sequential output") {
  SimConfig config = tiny_config("grid_w1.csv");
  run_grid(config);
  SimConfig parallel = config;
  parallel.workers = 3;
  parallel.out_path = temp_path("grid_w3.csv");
  run_grid(parallel);
  CHECK(strip_elapsed(config.out_path) == strip_elapsed(parallel.out_path));
}

TEST_CASE("run_grid resume completes a truncated records file") {
  SimConfig config = tiny_config("grid_resume.csv");
  run_grid(config);
  const std::string full = strip_elapsed(config.out_path);

  // Keep header + first 3 records, cutting the 4th mid-line.
  std::ifstream in(config.out_path);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  in.close();
  std::ofstream out(config.out_path, std::ios::trunc);
  for (int i = 0; i < 4; ++i) out << lines[i] << "\n";
  out << lines[4].substr(0, 25);  // torn write
  out.close();

  const std::size_t total = run_grid(config, /*resume=*/true);
  CHECK(total == 8);
  CHECK(strip_elapsed(config.out_path) == full);
}

TEST_CASE("run_grid resume rejects a mismatched grid") {
  SimConfig config = tiny_config("grid_mismatch.csv");
  run_grid(config);
  SimConfig other = config;
  other.root_seed = 555;  // different seeds -> rows no longer match
  CHECK_THROWS_AS(run_grid(other, /*resume=*/true), InputError);
}

TEST_CASE("boxplot_stats on constant data and the 1..100 oracle") {
  const auto flat = boxplot_stats(std::vector<double>(12, 0.7));
  CHECK(flat.median == 0.7);
  CHECK(flat.q1 == 0.7);
  CHECK(flat.q3 == 0.7);
  CHECK(flat.outliers.empty());
  CHECK(flat.whisker_lo == 0.7);
  CHECK(flat.whisker_hi == 0.7);

  std::vector<double> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i + 1.0;
  const auto st = boxplot_stats(v);
  // Type-7 quartiles by hand: h = (n-1)q.
  CHECK(st.median == doctest::Approx(50.5).epsilon(1e-14));
  CHECK(st.q1 == doctest::Approx(25.75).epsilon(1e-14));
  CHECK(st.q3 == doctest::Approx(75.25).epsilon(1e-14));
  CHECK(st.outliers.empty());
  CHECK(st.whisker_lo == 1.0);
  CHECK(st.whisker_hi == 100.0);

  std::vector<double> with_outlier = {1, 2, 2, 3, 3, 3, 4, 4, 5, 40};
  const auto so = boxplot_stats(with_outlier);
  REQUIRE(so.outliers.size() == 1);
  CHECK(so.outliers[0] == 40.0);
  CHECK(so.whisker_hi == 5.0);

  const auto empty = boxplot_stats({}, 3);
  CHECK(std::isnan(empty.median));
  CHECK(empty.n_missing == 3);
  CHECK(empty.n_total == 3);
}

TEST_CASE("summarize excludes missing values and counts them") {
  std::vector<SimRecord> records;
  for (int i = 0; i < 6; ++i) {
    SimRecord r;
    r.n = 50;
    r.gamma = 0.5;
    r.ratio = 0.01;
    r.data_type = DataType::normal;
    r.rep = i;
    r.sensitivity = i < 4 ? 0.25 * i : std::numeric_limits<double>::quiet_NaN();
    r.specificity = 0.9;
    r.weight_correlation = 0.5;
    records.push_back(r);
  }
  const auto rows = summarize(records);
  REQUIRE(rows.size() == 3);
  const auto& sens = rows[0];
  CHECK(sens.metric == "sensitivity");
  CHECK(sens.stats.n_total == 6);
  CHECK(sens.stats.n_missing == 2);
  CHECK(sens.stats.median == doctest::Approx(0.375));  // of {0,.25,.5,.75}

  CHECK_THROWS_AS(summarize({}), EmptyInput);
}

TEST_CASE("summarize is invariant to record order") {
  SimConfig config = tiny_config("grid_perm.csv");
  run_grid(config);
  auto records = read_records(config.out_path);
  auto rows_a = summarize(records);
  Rng rng(1);
  for (std::size_t i = records.size() - 1; i > 0; --i)
    std::swap(records[i], records[rng.below(i + 1)]);
  auto rows_b = summarize(records);
  REQUIRE(rows_a.size() == rows_b.size());
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].metric == rows_b[i].metric);
    CHECK(rows_a[i].n == rows_b[i].n);
    CHECK(rows_a[i].stats.median == rows_b[i].stats.median);
    CHECK(rows_a[i].stats.q1 == rows_b[i].stats.q1);
    CHECK(rows_a[i].stats.q3 == rows_b[i].stats.q3);
  }
}

TEST_CASE("summary CSV and SVG renderers produce well-formed output") {
  SimConfig config = tiny_config("grid_svg.csv");
  run_grid(config);
  const auto rows = summarize(read_records(config.out_path));

  const std::string summary_path = temp_path("summary.csv");
  write_summary_csv(summary_path, rows);
  std::ifstream sin(summary_path);
  std::string header;
  std::getline(sin, header);
  CHECK(header ==
        "metric,n,gamma,R,data_type,n_total,n_missing,median,q1,q3,"
        "whisker_lo,whisker_hi,n_outliers");
  int data_lines = 0;
  std::string line;
  while (std::getline(sin, line))
    if (!line.empty()) ++data_lines;
  // 3 metrics x 2 n x 1 gamma x 1 R x 2 types.
  CHECK(data_lines == 12);

  const auto svgs = render_all_metrics("/tmp", rows);
  REQUIRE(svgs.size() == 3);
  for (const auto& path : svgs) {
    std::ifstream svg_in(path);
    REQUIRE(svg_in.good());
    std::stringstream buf;
    buf << svg_in.rdbuf();
    const std::string svg = buf.str();
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    // One box rect per (n, R, panel) cell plus the frame/background rects.
    CHECK(std::count(svg.begin(), svg.end(), '<') > 10);
  }

  // Determinism of the SVG bytes.
  render_metric_boxplots(temp_path("again.svg"), "sensitivity",
                         {rows.begin(), rows.begin() + 4});
  render_metric_boxplots(temp_path("again2.svg"), "sensitivity",
                         {rows.begin(), rows.begin() + 4});
  std::ifstream a(temp_path("again.svg")), b(temp_path("again2.svg"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}
