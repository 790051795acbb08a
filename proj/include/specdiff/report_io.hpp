#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "error_harness.hpp"
#include "schemes.hpp"

namespace specdiff {

// All numeric report output goes through one formatter, 6 significant digits
// in scientific notation, so files are byte stable and greppable.
inline std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

inline std::string trajectory_csv(const Trajectory& traj,
                                  const std::optional<ScalarFunction>& exact) {
  std::string out = "t,u,exact,error,fp_iters\n";
  for (std::size_t n = 0; n < traj.values.size(); ++n) {
    const auto& [t, u] = traj.values[n];
    out += format_sci(t);
    out += ',';
    out += format_sci(u);
    out += ',';
    if (exact) {
      const double ue = (*exact)(t);
      out += format_sci(ue);
      out += ',';
      out += format_sci(std::fabs(u - ue));
    } else {
      out += ',';
    }
    out += ',';
    // the iteration count of the step that produced this node, 0 for u0
    out += std::to_string(n == 0 ? 0 : traj.fp_iterations[n - 1]);
    out += '\n';
  }
  return out;
}

inline std::string sweep_csv(const std::vector<ErrorReport>& reports) {
  std::string out = "problem,scheme,p,N,h,E,R\n";
  for (const ErrorReport& r : reports) {
    out += r.problem_id;
    out += ',';
    out += scheme_name(r.scheme);
    out += ',';
    out += pnorm_label(r.p);
    out += ',';
    out += std::to_string(r.N);
    out += ',';
    out += format_sci(r.h);
    out += ',';
    out += format_sci(r.E);
    out += ',';
    if (r.R) out += format_sci(*r.R);
    out += '\n';
  }
  return out;
}

// Pivot a concatenated multi-scheme sweep into a table with one row per N
// and a pair of columns (error, ratio) per scheme.
inline std::string sweep_markdown(const std::vector<ErrorReport>& reports) {
  std::vector<SchemeId> schemes;
  std::vector<int> ns;
  for (const ErrorReport& r : reports) {
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
      schemes.push_back(r.scheme);
    if (std::find(ns.begin(), ns.end(), r.N) == ns.end()) ns.push_back(r.N);
  }
  std::sort(ns.begin(), ns.end());

  const auto lookup = [&](SchemeId s, int n) -> const ErrorReport* {
    for (const ErrorReport& r : reports)
      if (r.scheme == s && r.N == n) return &r;
    return nullptr;
  };

  std::string out = "| N |";
  for (SchemeId s : schemes) {
    out += " ";
    out += scheme_name(s);
    out += " E | ";
    out += scheme_name(s);
    out += " R |";
  }
  out += "\n|---|";
  for (std::size_t i = 0; i < schemes.size(); ++i) out += "---|---|";
  out += "\n";
  for (int n : ns) {
    out += "| " + std::to_string(n) + " |";
    for (SchemeId s : schemes) {
      const ErrorReport* r = lookup(s, n);
      out += ' ';
      if (r) out += format_sci(r->E);
      out += " |";
      out += ' ';
      if (r && r->R) out += format_sci(*r->R);
      out += " |";
    }
    out += "\n";
  }
  return out;
}

struct MarkdownTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads back tables in the shape sweep_markdown writes. Used to check that
// rendered tables stay faithful to the CSV numbers.
inline MarkdownTable parse_markdown_table(const std::string& text) {
  MarkdownTable table;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line[0] != '|') continue;

    std::vector<std::string> cells;
    std::size_t cell_start = 1;
    for (std::size_t i = 1; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '|') {
        std::string cell = line.substr(cell_start, i - cell_start);
        const auto from = cell.find_first_not_of(" \t");
        if (from == std::string::npos) {
          cell.clear();
        } else {
          const auto to = cell.find_last_not_of(" \t");
          cell = cell.substr(from, to - from + 1);
        }
        cells.push_back(cell);
        cell_start = i + 1;
      }
    }
    if (!cells.empty() && cells.back().empty()) cells.pop_back();

    const bool separator =
        !cells.empty() &&
        std::all_of(cells.begin(), cells.end(), [](const std::string& c) {
          return !c.empty() && c.find_first_not_of("-: ") == std::string::npos;
        });
    if (separator) continue;
    if (table.header.empty())
      table.header = cells;
    else
      table.rows.push_back(cells);
  }
  return table;
}

namespace detail {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

inline std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string format_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Fixed-size SVG 1.1 line chart. No external assets, no timestamps, output
// depends only on the data.
inline std::string line_chart_svg(const std::vector<PlotSeries>& series,
                                  const std::string& title,
                                  const std::string& x_label,
                                  const std::string& y_label) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                                  "#bcbd22", "#e377c2"};
  const double left = 72.0, right = 608.0, top = 48.0, bottom = 420.0;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-300) ymax = ymin + 1.0;

  const auto px = [&](double x) {
    return left + (x - xmin) / (xmax - xmin) * (right - left);
  };
  const auto py = [&](double y) {
    return bottom - (y - ymin) / (ymax - ymin) * (bottom - top);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"320\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" + title + "</text>\n";

  // axes
  svg += "<line x1=\"" + format_coord(left) + "\" y1=\"" + format_coord(bottom) +
         "\" x2=\"" + format_coord(right) + "\" y2=\"" + format_coord(bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + format_coord(left) + "\" y1=\"" + format_coord(top) +
         "\" x2=\"" + format_coord(left) + "\" y2=\"" + format_coord(bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double cx = px(fx);
    const double cy = py(fy);
    svg += "<line x1=\"" + format_coord(cx) + "\" y1=\"" + format_coord(bottom) +
           "\" x2=\"" + format_coord(cx) + "\" y2=\"" + format_coord(bottom + 5) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + format_coord(cx) + "\" y=\"" + format_coord(bottom + 20) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           format_tick(fx) + "</text>\n";
    svg += "<line x1=\"" + format_coord(left - 5) + "\" y1=\"" + format_coord(cy) +
           "\" x2=\"" + format_coord(left) + "\" y2=\"" + format_coord(cy) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + format_coord(left - 8) + "\" y=\"" + format_coord(cy + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           format_tick(fy) + "</text>\n";
  }

  svg += "<text x=\"" + format_coord((left + right) / 2.0) + "\" y=\"456\" "
         "font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + format_coord((top + bottom) / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + format_coord((top + bottom) / 2.0) +
         ")\">" + y_label + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = palette[si % (sizeof(palette) / sizeof(palette[0]))];
    std::string pts;
    for (const auto& [x, y] : series[si].points) {
      if (!pts.empty()) pts += ' ';
      pts += format_coord(px(x));
      pts += ',';
      pts += format_coord(py(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(si);
    svg += "<line x1=\"" + format_coord(right - 110) + "\" y1=\"" +
           format_coord(ly) + "\" x2=\"" + format_coord(right - 86) + "\" y2=\"" +
           format_coord(ly) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + format_coord(right - 80) + "\" y=\"" +
           format_coord(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + series[si].label +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace detail

inline std::string trajectory_svg(const Trajectory& traj,
                                  const std::optional<ScalarFunction>& exact,
                                  const std::string& title) {
  std::vector<detail::PlotSeries> series;
  detail::PlotSeries numeric;
  numeric.label = "numeric";
  numeric.points = traj.values;
  series.push_back(std::move(numeric));
  if (exact) {
    detail::PlotSeries truth;
    truth.label = "exact";
    for (const auto& [t, u] : traj.values) truth.points.emplace_back(t, (*exact)(t));
    series.push_back(std::move(truth));
  }
  return detail::line_chart_svg(series, title, "t", "u");
}

// log2(N) against log10(E), one polyline per scheme.
inline std::string sweep_svg(const std::vector<ErrorReport>& reports,
                             const std::string& title) {
  std::vector<detail::PlotSeries> series;
  for (const ErrorReport& r : reports) {
    if (!(r.E > 0.0)) continue;
    const std::string label = scheme_name(r.scheme);
    detail::PlotSeries* dest = nullptr;
    for (auto& s : series)
      if (s.label == label) dest = &s;
    if (!dest) {
      series.push_back({label, {}});
      dest = &series.back();
    }
    dest->points.emplace_back(std::log2(static_cast<double>(r.N)), std::log10(r.E));
  }
  return detail::line_chart_svg(series, title, "log2 N", "log10 E");
}

}  // namespace specdiff
