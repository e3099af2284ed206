#pragma once

#include <string>

#include "aqp/graph.hpp"

namespace aqp {

struct DotOptions {
  /// Render nodes that wrap sub-pipelines as clusters containing the
  /// sub-pipeline, linked from the wrapping node with a dashed edge.
  bool expand = false;
};

/// Renders the graph in Graphviz DOT form. Output is deterministic:
/// node statements sorted by id, then edges sorted by parent id with
/// children in declaration order. Every node gets a default label of
/// "<id>\n(<type>)"; draw_options pass through as extra attributes and
/// may override the label. Ids and attribute values are quoted, with
/// backslash, quote and newline escaped.
std::string to_dot(const PipelineGraph& graph, const DotOptions& options = {});

}  // namespace aqp
