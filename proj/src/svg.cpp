#include "gelasso/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gelasso/csv.hpp"
#include "gelasso/errors.hpp"

namespace gelasso {

namespace {

const char* const kPalette[] = {"#1b9e77", "#d95f02", "#7570b3",
                                "#e7298a", "#66a61e", "#e6ab02"};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

std::string fmt_short(double v) {
  std::string s = io::format_double(v);
  return s.size() > 8 ? s.substr(0, 8) : s;
}

struct Panel {
  double gamma;
  DataType type;
};

}  // namespace

void render_metric_boxplots(const std::string& path,
                            const std::string& metric_label,
                            const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw EmptyInput("render_metric_boxplots: no rows");

  std::set<double> gamma_set, ratio_set;
  std::set<int> n_set, type_set;
  double data_lo = 0.0, data_hi = 1.0;
  for (const auto& r : rows) {
    gamma_set.insert(r.gamma);
    ratio_set.insert(r.ratio);
    n_set.insert(r.n);
    type_set.insert(r.data_type == DataType::ordinal ? 1 : 0);
    if (!std::isnan(r.stats.whisker_lo)) {
      data_lo = std::min(data_lo, r.stats.whisker_lo);
      data_hi = std::max(data_hi, r.stats.whisker_hi);
      for (double o : r.stats.outliers) {
        data_lo = std::min(data_lo, o);
        data_hi = std::max(data_hi, o);
      }
    }
  }
  const std::vector<double> gammas(gamma_set.begin(), gamma_set.end());
  const std::vector<double> ratios(ratio_set.begin(), ratio_set.end());
  const std::vector<int> ns(n_set.begin(), n_set.end());

  std::vector<Panel> panels;
  for (int t : type_set)
    for (double g : gammas)
      panels.push_back({g, t ? DataType::ordinal : DataType::normal});
  const int ncols = static_cast<int>(gammas.size());
  const int nrows = static_cast<int>(type_set.size());

  const double panel_w = std::max<std::size_t>(ns.size(), 2) * 28.0 *
                             std::max<std::size_t>(ratios.size(), 1) +
                         30.0;
  const double panel_h = 170.0;
  const double margin_left = 58.0, margin_top = 56.0;
  const double gap = 16.0;
  const double legend_h = 24.0;
  const double width = margin_left + ncols * (panel_w + gap) + 20.0;
  const double height =
      margin_top + nrows * (panel_h + gap + 26.0) + legend_h + 30.0;

  const double y_lo = std::floor(data_lo * 10.0) / 10.0;
  const double y_hi = std::ceil(data_hi * 10.0) / 10.0;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << " " << fmt(height) << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2) << "\" y=\"22\" text-anchor=\"middle\""
      << " font-size=\"15\" font-weight=\"bold\">" << metric_label
      << "</text>\n";

  // Legend: one swatch per R.
  {
    double lx = margin_left;
    const double ly = 34.0;
    for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
      out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 9) << "\""
          << " width=\"12\" height=\"12\" fill=\""
          << kPalette[ri % 6] << "\"/>\n";
      out << "<text x=\"" << fmt(lx + 16) << "\" y=\"" << fmt(ly + 2)
          << "\" font-size=\"11\">R = " << fmt_short(ratios[ri])
          << "</text>\n";
      lx += 96.0;
    }
  }

  for (int row = 0; row < nrows; ++row) {
    for (int col = 0; col < ncols; ++col) {
      const Panel& panel = panels[row * ncols + col];
      const double px = margin_left + col * (panel_w + gap);
      const double py = margin_top + row * (panel_h + gap + 26.0);

      const auto y_of = [&](double v) {
        return py + panel_h - (v - y_lo) / (y_hi - y_lo) * panel_h;
      };

      // Frame and panel caption.
      out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
          << fmt(panel_w) << "\" height=\"" << fmt(panel_h)
          << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.8\"/>\n";
      out << "<text x=\"" << fmt(px + panel_w / 2) << "\" y=\"" << fmt(py - 4)
          << "\" text-anchor=\"middle\" font-size=\"11\">gamma = "
          << fmt_short(panel.gamma) << ", "
          << data_type_name(panel.type) << "</text>\n";

      // Y ticks on the leftmost column.
      for (double tick = y_lo; tick <= y_hi + 1e-9; tick += (y_hi - y_lo) / 4.0) {
        const double ty = y_of(tick);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(ty) << "\" x2=\""
            << fmt(px + panel_w) << "\" y2=\"" << fmt(ty)
            << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        if (col == 0)
          out << "<text x=\"" << fmt(px - 6) << "\" y=\"" << fmt(ty + 3)
              << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(tick)
              << "</text>\n";
      }

      const double slot_w = panel_w / static_cast<double>(ns.size());
      const double box_w =
          std::min(18.0, slot_w / (static_cast<double>(ratios.size()) + 0.8));
      for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const double slot_x = px + (static_cast<double>(ni) + 0.5) * slot_w;
        out << "<text x=\"" << fmt(slot_x) << "\" y=\""
            << fmt(py + panel_h + 14) << "\" text-anchor=\"middle\""
            << " font-size=\"10\">" << ns[ni] << "</text>\n";
        for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
          const SummaryRow* cell = nullptr;
          for (const auto& r : rows) {
            if (r.n == ns[ni] && r.gamma == panel.gamma &&
                r.ratio == ratios[ri] && r.data_type == panel.type) {
              cell = &r;
              break;
            }
          }
          if (cell == nullptr || std::isnan(cell->stats.median)) continue;
          const double cx =
              slot_x + (static_cast<double>(ri) -
                        (static_cast<double>(ratios.size()) - 1) / 2.0) *
                           (box_w + 3.0);
          const char* color = kPalette[ri % 6];
          const BoxplotStats& st = cell->stats;
          // Whisker, box, median, outliers.
          out << "<line x1=\"" << fmt(cx) << "\" y1=\""
              << fmt(y_of(st.whisker_lo)) << "\" x2=\"" << fmt(cx)
              << "\" y2=\"" << fmt(y_of(st.whisker_hi)) << "\" stroke=\""
              << color << "\" stroke-width=\"1\"/>\n";
          for (double wv : {st.whisker_lo, st.whisker_hi})
            out << "<line x1=\"" << fmt(cx - box_w / 3) << "\" y1=\""
                << fmt(y_of(wv)) << "\" x2=\"" << fmt(cx + box_w / 3)
                << "\" y2=\"" << fmt(y_of(wv)) << "\" stroke=\"" << color
                << "\" stroke-width=\"1\"/>\n";
          out << "<rect x=\"" << fmt(cx - box_w / 2) << "\" y=\""
              << fmt(y_of(st.q3)) << "\" width=\"" << fmt(box_w)
              << "\" height=\"" << fmt(std::max(0.5, y_of(st.q1) - y_of(st.q3)))
              << "\" fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\""
              << color << "\" stroke-width=\"1\"/>\n";
          out << "<line x1=\"" << fmt(cx - box_w / 2) << "\" y1=\""
              << fmt(y_of(st.median)) << "\" x2=\"" << fmt(cx + box_w / 2)
              << "\" y2=\"" << fmt(y_of(st.median)) << "\" stroke=\"" << color
              << "\" stroke-width=\"1.6\"/>\n";
          for (double o : st.outliers)
            out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(y_of(o))
                << "\" r=\"1.6\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"0.8\"/>\n";
        }
      }
      out << "<text x=\"" << fmt(px + panel_w / 2) << "\" y=\""
          << fmt(py + panel_h + 25) << "\" text-anchor=\"middle\""
          << " font-size=\"10\" fill=\"#555\">sample size</text>\n";
    }
  }
  out << "</svg>\n";
}

std::vector<std::string> render_all_metrics(const std::string& out_dir,
                                            const std::vector<SummaryRow>& rows) {
  std::vector<std::string> written;
  for (const char* metric :
       {"sensitivity", "specificity", "weight_correlation"}) {
    std::vector<SummaryRow> subset;
    for (const auto& r : rows)
      if (r.metric == metric) subset.push_back(r);
    if (subset.empty()) continue;
    const std::string path = out_dir + "/" + metric + ".svg";
    render_metric_boxplots(path, metric, subset);
    written.push_back(path);
  }
  return written;
}

}  // namespace gelasso
