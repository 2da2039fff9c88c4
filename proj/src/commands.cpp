#include "gelasso/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "gelasso/csv.hpp"
#include "gelasso/errors.hpp"
#include "gelasso/model_selection.hpp"
#include "gelasso/rng.hpp"
#include "gelasso/svg.hpp"

namespace gelasso::cli {

namespace {

int exit_code_for(const Error& e) {
  if (dynamic_cast<const InputError*>(&e) != nullptr) return 1;
  return 2;
}

template <typename Fn>
int guarded(bool quiet, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    if (!quiet) std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// All values integral with at most `max_levels` distinct values per column.
bool looks_ordinal(const io::Table& table, int max_levels) {
  const std::size_t p = table.rows.front().size();
  for (std::size_t j = 0; j < p; ++j) {
    std::set<double> distinct;
    for (const auto& row : table.rows) {
      const double v = row[j];
      if (!std::isfinite(v) || v != std::floor(v)) return false;
      distinct.insert(v);
      if (static_cast<int>(distinct.size()) > max_levels) return false;
    }
  }
  return true;
}

// Map each column's observed values onto ranks 1..L; identity for data
// already coded 1..L with every level observed.
IntMatrix rank_code(const io::Table& table) {
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(table.rows.front().size());
  IntMatrix out(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    std::map<double, int> level_of;
    for (Eigen::Index r = 0; r < n; ++r) level_of[table.rows[r][j]] = 0;
    int next = 1;
    for (auto& [value, level] : level_of) level = next++;
    for (Eigen::Index r = 0; r < n; ++r) out(r, j) = level_of[table.rows[r][j]];
  }
  return out;
}

Matrix to_matrix(const io::Table& table) {
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(table.rows.front().size());
  Matrix out(n, p);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index j = 0; j < p; ++j) out(r, j) = table.rows[r][j];
  return out;
}

int env_workers() {
  const char* env = std::getenv("GELASSO_WORKERS");
  if (env == nullptr) return 0;
  int v = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
  if (ec != std::errc{} || v < 1) return 0;
  return v;
}

}  // namespace

int cmd_estimate(const EstimateOptions& options) {
  return guarded(options.quiet, [&] {
    const io::Table table = io::read_table(options.data_path);
    const int n = static_cast<int>(table.rows.size());

    bool ordinal;
    if (options.force_ordinal)
      ordinal = true;
    else if (options.force_continuous)
      ordinal = false;
    else
      ordinal = looks_ordinal(table, options.max_levels);

    CorrelationMatrix corr =
        ordinal ? polychoric_matrix(rank_code(table))
                : pearson_matrix(to_matrix(table));

    const SelectionResult sel = select_network(
        corr, n, options.gamma, options.ratio, options.lambda_count);

    io::write_matrix(options.network_out, sel.network.weights, table.header);

    std::ofstream trace(options.trace_out, std::ios::trunc);
    if (!trace)
      throw InputError("cannot open '" + options.trace_out + "' for writing");
    trace << "lambda,edges,loglik,ebic,selected\n";
    for (std::size_t i = 0; i < sel.trace.entries.size(); ++i) {
      const EbicEntry& e = sel.trace.entries[i];
      trace << io::format_double(e.lambda) << ',' << e.edges << ','
            << io::format_double(e.loglik) << ',' << io::format_double(e.ebic)
            << ',' << (static_cast<int>(i) == sel.trace.selected ? 1 : 0)
            << "\n";
    }

    if (!options.quiet) {
      std::cout << "input: " << options.data_path << " (" << n << " rows, "
                << table.rows.front().size() << " columns, "
                << (ordinal ? "ordinal/polychoric" : "continuous/pearson")
                << ")\n";
      const EbicEntry& chosen = sel.trace.entries[sel.trace.selected];
      std::cout << "selected lambda " << io::format_double(chosen.lambda)
                << " with " << chosen.edges << " edges";
      if (corr.repaired) std::cout << " [correlation matrix repaired]";
      if (!sel.all_converged) std::cout << " [some fits did not converge]";
      std::cout << "\n";
      std::cout << "wrote " << options.network_out << " and "
                << options.trace_out << "\n";
    }
    return 0;
  });
}

int cmd_generate(const GenerateOptions& options) {
  return guarded(options.quiet, [&] {
    TrueNetwork truth;
    if (!options.truth_in.empty()) {
      truth = threshold_network(io::read_network(options.truth_in).weights,
                                options.cutoff);
      truth.provenance = "file:" + options.truth_in;
    } else {
      truth = synthetic_true_network(options.p, options.density,
                                     mix64(options.seed ^ kSeedTagTruth));
    }

    io::write_network(options.truth_out, truth.network);
    if (!options.quiet)
      std::cout << "truth: " << options.truth_out << " ("
                << truth.network.dim() << " nodes, "
                << truth.network.edge_count() << " edges"
                << (truth.shrunk ? ", PD-repaired by uniform shrink" : "")
                << ")\n";

    if (options.n > 0) {
      const Matrix sigma = pcor_to_covariance(truth);
      const Matrix data =
          sample_mvn(sigma, options.n, mix64(options.seed ^ kSeedTagData));
      if (options.ordinal) {
        const OrdinalScheme scheme = make_ordinal_scheme(
            truth.network.dim(), mix64(options.seed ^ kSeedTagScheme));
        io::write_dataset(options.data_out, discretize(data, scheme), {});
      } else {
        io::write_dataset(options.data_out, data, {});
      }
      if (!options.quiet)
        std::cout << "data: " << options.data_out << " (" << options.n
                  << " rows, " << (options.ordinal ? "ordinal" : "normal")
                  << ")\n";
    }
    return 0;
  });
}

SimConfig parse_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  SimConfig config;
  config.workers = 0;  // resolved after parsing
  bool saw_n = false, saw_gamma = false, saw_r = false, saw_type = false;

  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  const auto split_list = [&](const std::string& value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
      if (i == value.size() || value[i] == ',') {
        const std::string item = trim(value.substr(start, i - start));
        if (!item.empty()) items.push_back(item);
        start = i + 1;
      }
    }
    return items;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw InputError(path + ":" + std::to_string(lineno) + ": empty value for '" +
                       key + "'");

    const auto parse_int = [&](const std::string& s) {
      try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": not an integer: '" + s + "'");
      }
    };
    const auto parse_real = [&](const std::string& s) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": not a number: '" + s + "'");
      }
    };

    if (key == "n") {
      config.sample_sizes.clear();
      for (const auto& s : split_list(value))
        config.sample_sizes.push_back(static_cast<int>(parse_int(s)));
      saw_n = true;
    } else if (key == "gamma") {
      config.gammas.clear();
      for (const auto& s : split_list(value)) config.gammas.push_back(parse_real(s));
      saw_gamma = true;
    } else if (key == "R") {
      config.ratios.clear();
      for (const auto& s : split_list(value)) config.ratios.push_back(parse_real(s));
      saw_r = true;
    } else if (key == "type") {
      config.data_types.clear();
      for (const auto& s : split_list(value)) {
        if (s == "normal")
          config.data_types.push_back(DataType::normal);
        else if (s == "ordinal")
          config.data_types.push_back(DataType::ordinal);
        else
          throw InputError(path + ":" + std::to_string(lineno) +
                           ": type must be 'normal' or 'ordinal', got '" + s + "'");
      }
      saw_type = true;
    } else if (key == "reps") {
      config.replications = static_cast<int>(parse_int(value));
    } else if (key == "lambdas") {
      config.lambda_count = static_cast<int>(parse_int(value));
    } else if (key == "seed") {
      config.root_seed = static_cast<std::uint64_t>(parse_int(value));
    } else if (key == "truth") {
      config.truth_file = value == "synthetic" ? "" : value;
    } else if (key == "p") {
      config.synth_p = static_cast<int>(parse_int(value));
    } else if (key == "density") {
      config.synth_density = parse_real(value);
    } else if (key == "redraw_thresholds") {
      if (value == "true" || value == "1")
        config.redraw_thresholds = true;
      else if (value == "false" || value == "0")
        config.redraw_thresholds = false;
      else
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": redraw_thresholds must be true or false");
    } else if (key == "workers") {
      config.workers = static_cast<int>(parse_int(value));
    } else if (key == "out") {
      config.out_path = value;
    } else {
      throw InputError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                       key + "'");
    }
  }
  if (!saw_n || !saw_gamma || !saw_r || !saw_type)
    throw InputError("'" + path +
                     "': config must set all of n, gamma, R and type");
  return config;
}

int cmd_simulate(const SimulateOptions& options) {
  return guarded(options.quiet, [&] {
    SimConfig config = parse_sim_config(options.config_path);
    if (!options.out_override.empty()) config.out_path = options.out_override;
    if (options.workers_override > 0)
      config.workers = options.workers_override;
    else if (config.workers <= 0)
      config.workers = std::max(1, env_workers());

    const std::size_t total = run_grid(config, options.resume);
    if (!options.quiet)
      std::cout << "wrote " << total << " records to " << config.out_path
                << "\n";
    return 0;
  });
}

int cmd_summarize(const SummarizeOptions& options) {
  return guarded(options.quiet, [&] {
    const std::vector<SimRecord> records = read_records(options.records_path);
    const std::vector<SummaryRow> rows = summarize(records);
    std::filesystem::create_directories(options.out_dir);
    const std::string summary_path = options.out_dir + "/summary.csv";
    write_summary_csv(summary_path, rows);
    const auto svgs = render_all_metrics(options.out_dir, rows);
    if (!options.quiet) {
      std::cout << "wrote " << summary_path << "\n";
      for (const auto& s : svgs) std::cout << "wrote " << s << "\n";
    }
    return 0;
  });
}

}  // namespace gelasso::cli
