#include "aqp/viz.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace aqp {
namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += "\"";
  return out;
}

std::string attr_key(const std::string& k) {
  bool plain = !k.empty() && !std::isdigit(static_cast<unsigned char>(k[0]));
  for (char c : k)
    plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  return plain ? k : dot_quote(k);
}

void emit_node_statement(std::string& out, const std::string& indent,
                         const Node& node, const std::string& display_id) {
  std::map<std::string, std::string> attrs;
  attrs["label"] = node.id() + "\n(" + node.type_name() + ")";
  for (const auto& [k, v] : node.spec().draw_options) attrs[k] = v;

  out += indent + dot_quote(display_id) + " [";
  bool first = true;
  for (const auto& [k, v] : attrs) {
    if (!first) out += ", ";
    first = false;
    out += attr_key(k) + "=" + dot_quote(v);
  }
  out += "];\n";
}

/// `prefix` namespaces nested ids ("wrapper/inner") so expanded output
/// stays collision-free when sub-pipelines reuse ids.
void emit_graph(std::string& out, const PipelineGraph& graph,
                const std::string& prefix, const std::string& indent,
                bool expand) {
  std::vector<std::string> ids = graph.order();
  std::sort(ids.begin(), ids.end());

  for (const std::string& id : ids)
    emit_node_statement(out, indent, graph.node(id), prefix + id);

  if (expand) {
    for (const std::string& id : ids) {
      const PipelineGraph* nested = graph.node(id).nested_graph();
      if (nested == nullptr) continue;
      out += indent + "subgraph " + dot_quote("cluster_" + prefix + id) + " {\n";
      out += indent + "  label=" + dot_quote(prefix + id) + ";\n";
      emit_graph(out, *nested, prefix + id + "/", indent + "  ", true);
      out += indent + "}\n";
    }
  }

  for (const std::string& id : ids)
    for (const std::string& child : graph.node(id).children())
      out += indent + dot_quote(prefix + id) + " -> " + dot_quote(prefix + child) +
             ";\n";

  if (expand) {
    for (const std::string& id : ids) {
      const PipelineGraph* nested = graph.node(id).nested_graph();
      if (nested == nullptr) continue;
      out += indent + dot_quote(prefix + id) + " -> " +
             dot_quote(prefix + id + "/" + nested->root_id()) +
             " [style=" + dot_quote("dashed") + "];\n";
    }
  }
}

}  // namespace

std::string to_dot(const PipelineGraph& graph, const DotOptions& options) {
  std::string out = "digraph pipeline {\n";
  emit_graph(out, graph, "", "  ", options.expand);
  out += "}\n";
  return out;
}

}  // namespace aqp
