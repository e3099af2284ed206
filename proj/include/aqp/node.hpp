#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aqp/error.hpp"
#include "aqp/store.hpp"

namespace aqp {

class PipelineGraph;
class NodeRegistry;

using Json = nlohmann::ordered_json;

/// What a node tells the traversal after executing. `halt` prunes the
/// node's subtree for this arrival; it is control flow, not failure.
enum class ExecStatus { proceed, halt };

/// Declarative description of one node, as found in a pipeline file.
/// `params` holds every field that is not part of the common shape, for
/// the concrete node type to validate at construction.
struct NodeSpec {
  std::string id;
  std::string node_type;
  std::vector<std::string> children;
  std::optional<std::string> output_key;
  std::map<std::string, std::string> draw_options;
  Json params = Json::object();
};

/// Base class for all executable nodes. Construction validates params
/// (fail at build time, not mid-run); execute() reads and writes the
/// shared store.
class Node {
 public:
  explicit Node(NodeSpec spec) : spec_(std::move(spec)) {}
  virtual ~Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  virtual ExecStatus execute(ResultStore& store) = 0;

  /// Clears per-run state (e.g. sink counters). Called for every node at
  /// the start of a traversal.
  virtual void reset() {}

  /// Non-null for nodes that wrap a sub-pipeline; used by visualization.
  virtual const PipelineGraph* nested_graph() const { return nullptr; }

  const std::string& id() const { return spec_.id; }
  const std::string& type_name() const { return spec_.node_type; }
  const std::vector<std::string>& children() const { return spec_.children; }
  const std::optional<std::string>& output_key() const {
    return spec_.output_key;
  }
  const NodeSpec& spec() const { return spec_; }

 protected:
  const Json& params() const { return spec_.params; }

  /// `output_key` falling back to the node id.
  std::string result_key() const {
    return spec_.output_key.value_or(spec_.id);
  }

  // Param accessors; all throw Error(missing_param / invalid_field) with
  // the node id in the message.
  std::string require_string(std::string_view name) const;
  std::string string_or(std::string_view name, std::string fallback) const;
  double require_number(std::string_view name) const;
  double number_or(std::string_view name, double fallback) const;
  std::int64_t int_or(std::string_view name, std::int64_t fallback) const;
  bool bool_or(std::string_view name, bool fallback) const;
  const Json* find_param(std::string_view name) const;

 private:
  NodeSpec spec_;
};

/// Maps type names to factories. A factory receives the spec plus the
/// registry itself so composite nodes can build their sub-pipelines
/// during construction.
class NodeRegistry {
 public:
  using Factory =
      std::function<std::unique_ptr<Node>(const NodeSpec&, const NodeRegistry&)>;

  /// Throws Error(duplicate_id) when the type name is already taken.
  void add(std::string type_name, Factory factory);

  bool contains(std::string_view type_name) const;

  /// Throws Error(unknown_node_type) for unregistered names.
  std::unique_ptr<Node> make(const NodeSpec& spec) const;

  std::vector<std::string> type_names() const;

  /// Registry with every built-in node type registered.
  static NodeRegistry with_builtins();

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

}  // namespace aqp
