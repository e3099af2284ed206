#include "aqp/dataset.hpp"

#include <algorithm>

namespace aqp {

ScoreColumn& DatasetTable::add_score_column(const std::string& name) {
  if (has_score_column(name))
    throw Error(errc::bad_param, "score column '" + name + "' already exists");
  ScoreColumn column;
  column.name = name;
  column.cells.resize(rows_.size());
  columns_.push_back(std::move(column));
  return columns_.back();
}

bool DatasetTable::has_score_column(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const ScoreColumn& c) { return c.name == name; });
}

const ScoreColumn& DatasetTable::score_column(const std::string& name) const {
  for (const ScoreColumn& c : columns_)
    if (c.name == name) return c;
  throw Error(errc::missing_metric_column, "no score column '" + name + "'");
}

ScoreColumn& DatasetTable::score_column(const std::string& name) {
  for (ScoreColumn& c : columns_)
    if (c.name == name) return c;
  throw Error(errc::missing_metric_column, "no score column '" + name + "'");
}

}  // namespace aqp
