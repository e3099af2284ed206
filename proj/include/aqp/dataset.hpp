#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aqp/error.hpp"

namespace aqp {

/// One condition of a listening test: a reference / degraded pair with
/// subjective score and a free-form condition label.
struct DatasetRow {
  std::string ref_path;  // as written in the csv
  std::string deg_path;
  std::string codec;
  double mos = 0.0;
  std::string ref_resolved;  // absolute path, resolved against the csv dir
  std::string deg_resolved;

  bool operator==(const DatasetRow&) const = default;
};

/// Result of one metric on one row. `ok == false` means the row failed
/// and `error` holds the stable error name for reporting.
struct ScoreCell {
  double value = 0.0;
  bool ok = false;
  std::string error;

  bool operator==(const ScoreCell&) const = default;
};

struct ScoreColumn {
  std::string name;
  std::vector<ScoreCell> cells;  // one per dataset row

  bool operator==(const ScoreColumn&) const = default;
};

/// Parsed dataset with any metric columns appended during a run.
class DatasetTable {
 public:
  std::vector<DatasetRow>& rows() { return rows_; }
  const std::vector<DatasetRow>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  const std::vector<ScoreColumn>& score_columns() const { return columns_; }

  /// Appends an empty column sized to the current rows. The name must be
  /// new; columns keep insertion order.
  ScoreColumn& add_score_column(const std::string& name);

  bool has_score_column(const std::string& name) const;
  const ScoreColumn& score_column(const std::string& name) const;
  ScoreColumn& score_column(const std::string& name);

  bool operator==(const DatasetTable&) const = default;

 private:
  std::vector<DatasetRow> rows_;
  std::vector<ScoreColumn> columns_;
};

}  // namespace aqp
