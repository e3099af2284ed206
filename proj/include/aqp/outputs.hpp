#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "aqp/dataset.hpp"

namespace aqp {

struct MetricCorrelation {
  double pearson = 0.0;
  double spearman = 0.0;
  std::size_t n = 0;  // rows with a successfully computed score
};

/// Per-metric correlation against MOS, keyed by metric name (sorted, so
/// rendering is deterministic).
struct CorrelationReport {
  std::map<std::string, MetricCorrelation> metrics;
};

/// Correlation of every score column against the mos column, over the
/// rows whose score succeeded. Columns with fewer than 2 usable rows or
/// constant data are left out (with a warning); correlation is
/// undefined for them.
CorrelationReport correlation_report(const DatasetTable& table);

/// Writes the dataset with one extra column per metric. Original paths
/// are written as they appeared in the input csv. Failed rows carry
/// "ERROR:<name>" in the score cell. Scores use shortest round-trip
/// formatting, so the file is byte-stable and parses back to the exact
/// values. Requires at least one score column.
void write_results_csv(const DatasetTable& table,
                       const std::filesystem::path& path);

/// LaTeX tabular with columns Metric | Pearson | Spearman | N, one row
/// per metric in alphabetical order, coefficients to 3 decimals.
/// Requires a non-empty report.
std::string render_latex_table(const CorrelationReport& report);

/// Scatter plot of metric score (y) against subjective MOS (x) as a
/// self-contained 640x480 SVG: one marker per scored row, colors keyed
/// by codec from a fixed 8-color palette, with axis labels and a legend.
std::string render_scatter_svg_text(const DatasetTable& table,
                                    std::string_view metric);

void render_scatter_svg(const DatasetTable& table, std::string_view metric,
                        const std::filesystem::path& path);

}  // namespace aqp
