#include "aqp/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

#include "aqp/error.hpp"
#include "aqp/log.hpp"
#include "aqp/metrics.hpp"

namespace aqp {
namespace {

/// Shortest representation that parses back to the same double.
std::string fmt_shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  const bool needs_quotes =
      raw.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string latex_escape(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '&': out += "\\&"; break;
      case '%': out += "\\%"; break;
      case '#': out += "\\#"; break;
      case '_': out += "\\_"; break;
      case '$': out += "\\$"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_escape(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(errc::io_error,
                "cannot open '" + path.generic_string() + "' for writing");
  out << text;
  if (!out)
    throw Error(errc::io_error,
                "write failed for '" + path.generic_string() + "'");
}

constexpr const char* kPalette[8] = {"#4477aa", "#ee6677", "#228833",
                                     "#ccbb44", "#66ccee", "#aa3377",
                                     "#bbbbbb", "#222222"};

}  // namespace

CorrelationReport correlation_report(const DatasetTable& table) {
  CorrelationReport report;
  for (const ScoreColumn& column : table.score_columns()) {
    std::vector<double> mos;
    std::vector<double> scores;
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
      if (!column.cells[r].ok) continue;
      mos.push_back(table.rows()[r].mos);
      scores.push_back(column.cells[r].value);
    }
    if (mos.size() < 2) {
      log_warn("metric '" + column.name +
               "': fewer than 2 scored rows, no correlation");
      continue;
    }
    try {
      MetricCorrelation corr;
      corr.pearson = pearson(mos, scores);
      corr.spearman = spearman(mos, scores);
      corr.n = mos.size();
      report.metrics.emplace(column.name, corr);
    } catch (const Error& e) {
      log_warn("metric '" + column.name +
               "': correlation undefined: " + e.detail());
    }
  }
  return report;
}

void write_results_csv(const DatasetTable& table,
                       const std::filesystem::path& path) {
  if (table.score_columns().empty())
    throw Error(errc::bad_param, "results csv needs at least one score column");

  std::string out = "ref,deg,codec,mos";
  for (const ScoreColumn& column : table.score_columns())
    out += "," + csv_field(column.name);
  out += "\n";

  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    const DatasetRow& row = table.rows()[r];
    out += csv_field(row.ref_path);
    out += ",";
    out += csv_field(row.deg_path);
    out += ",";
    out += csv_field(row.codec);
    out += ",";
    out += fmt_shortest(row.mos);
    for (const ScoreColumn& column : table.score_columns()) {
      const ScoreCell& cell = column.cells[r];
      out += ",";
      out += cell.ok ? fmt_shortest(cell.value) : "ERROR:" + cell.error;
    }
    out += "\n";
  }
  write_text_file(path, out);
}

std::string render_latex_table(const CorrelationReport& report) {
  if (report.metrics.empty())
    throw Error(errc::bad_param, "correlation report is empty");

  std::string out;
  out += "\\begin{tabular}{lrrr}\n";
  out += "\\hline\n";
  out += "Metric & Pearson & Spearman & N \\\\\n";
  out += "\\hline\n";
  for (const auto& [name, corr] : report.metrics) {
    out += latex_escape(name) + " & " + fmt_fixed3(corr.pearson) + " & " +
           fmt_fixed3(corr.spearman) + " & " + std::to_string(corr.n) +
           " \\\\\n";
  }
  out += "\\hline\n";
  out += "\\end{tabular}\n";
  return out;
}

std::string render_scatter_svg_text(const DatasetTable& table,
                                    std::string_view metric) {
  const ScoreColumn& column = table.score_column(std::string(metric));

  struct Point {
    double mos;
    double score;
    std::string codec;
  };
  std::vector<Point> points;
  for (std::size_t r = 0; r < table.rows().size(); ++r)
    if (column.cells[r].ok)
      points.push_back({table.rows()[r].mos, column.cells[r].value,
                        table.rows()[r].codec});

  std::set<std::string> codec_set;
  for (const Point& p : points) codec_set.insert(p.codec);
  std::vector<std::string> codecs(codec_set.begin(), codec_set.end());
  auto codec_color = [&](const std::string& codec) {
    const std::size_t i = static_cast<std::size_t>(
        std::find(codecs.begin(), codecs.end(), codec) - codecs.begin());
    return kPalette[i % 8];
  };

  // MOS axis is the subjective scale, fixed to [1, 5]; the score axis is
  // data-driven with padding, widened when all scores coincide.
  const double x_min = 1.0;
  const double x_max = 5.0;
  double y_min = points.empty() ? 0.0 : points.front().score;
  double y_max = y_min;
  for (const Point& p : points) {
    y_min = std::min(y_min, p.score);
    y_max = std::max(y_max, p.score);
  }
  double pad = (y_max - y_min) * 0.05;
  if (pad <= 0.0) pad = 0.5;
  y_min -= pad;
  y_max += pad;

  const double plot_left = 70.0;
  const double plot_right = 500.0;
  const double plot_top = 30.0;
  const double plot_bottom = 430.0;
  auto sx = [&](double mos) {
    return plot_left +
           (mos - x_min) / (x_max - x_min) * (plot_right - plot_left);
  };
  auto sy = [&](double score) {
    return plot_bottom -
           (score - y_min) / (y_max - y_min) * (plot_bottom - plot_top);
  };

  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
      "height=\"480\" viewBox=\"0 0 640 480\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" "
         "fill=\"#ffffff\"/>\n";

  // axes
  svg += "<line x1=\"" + fmt_fixed3(plot_left) + "\" y1=\"" +
         fmt_fixed3(plot_bottom) + "\" x2=\"" + fmt_fixed3(plot_right) +
         "\" y2=\"" + fmt_fixed3(plot_bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_fixed3(plot_left) + "\" y1=\"" +
         fmt_fixed3(plot_top) + "\" x2=\"" + fmt_fixed3(plot_left) +
         "\" y2=\"" + fmt_fixed3(plot_bottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  // x ticks at the five MOS grades
  for (int grade = 1; grade <= 5; ++grade) {
    const double x = sx(grade);
    svg += "<line x1=\"" + fmt_fixed3(x) + "\" y1=\"" +
           fmt_fixed3(plot_bottom) + "\" x2=\"" + fmt_fixed3(x) + "\" y2=\"" +
           fmt_fixed3(plot_bottom + 5.0) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_fixed3(x) + "\" y=\"" +
           fmt_fixed3(plot_bottom + 20.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           std::to_string(grade) + "</text>\n";
  }

  // y ticks, five evenly spaced
  for (int t = 0; t <= 4; ++t) {
    const double value = y_min + (y_max - y_min) * t / 4.0;
    const double y = sy(value);
    svg += "<line x1=\"" + fmt_fixed3(plot_left - 5.0) + "\" y1=\"" +
           fmt_fixed3(y) + "\" x2=\"" + fmt_fixed3(plot_left) + "\" y2=\"" +
           fmt_fixed3(y) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_fixed3(plot_left - 10.0) + "\" y=\"" +
           fmt_fixed3(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           fmt_fixed3(value) + "</text>\n";
  }

  // axis titles
  svg += "<text x=\"" + fmt_fixed3((plot_left + plot_right) / 2.0) +
         "\" y=\"465\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">MOS</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt_fixed3((plot_top + plot_bottom) / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 " +
         fmt_fixed3((plot_top + plot_bottom) / 2.0) + ")\">" +
         svg_escape(std::string(metric)) + "</text>\n";

  // markers
  for (const Point& p : points) {
    svg += "<circle cx=\"" + fmt_fixed3(sx(p.mos)) + "\" cy=\"" +
           fmt_fixed3(sy(p.score)) + "\" r=\"4\" fill=\"" +
           codec_color(p.codec) + "\" fill-opacity=\"0.8\"/>\n";
  }

  // legend
  double legend_y = plot_top + 10.0;
  for (const std::string& codec : codecs) {
    svg += "<rect x=\"520\" y=\"" + fmt_fixed3(legend_y - 9.0) +
           "\" width=\"12\" height=\"12\" fill=\"" + codec_color(codec) +
           "\"/>\n";
    svg += "<text x=\"538\" y=\"" + fmt_fixed3(legend_y + 1.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           svg_escape(codec) + "</text>\n";
    legend_y += 20.0;
  }

  svg += "</svg>\n";
  return svg;
}

void render_scatter_svg(const DatasetTable& table, std::string_view metric,
                        const std::filesystem::path& path) {
  write_text_file(path, render_scatter_svg_text(table, metric));
}

}  // namespace aqp
