#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aqp/node.hpp"
#include "aqp/store.hpp"

namespace aqp {

/// Observes traversal; used for logging, visit counting and tests.
class TraversalObserver {
 public:
  virtual ~TraversalObserver() = default;
  virtual void on_visit(const Node& node, ExecStatus status) = 0;
};

/// Immutable directed acyclic graph of constructed nodes. Build it with
/// build_graph(); the structure never changes afterwards, only node
/// execution state does.
class PipelineGraph {
 public:
  PipelineGraph(PipelineGraph&&) noexcept = default;
  PipelineGraph& operator=(PipelineGraph&&) noexcept = default;

  const std::string& root_id() const { return root_id_; }
  std::size_t size() const { return order_.size(); }

  /// Node ids in declaration order.
  const std::vector<std::string>& order() const { return order_; }

  bool contains(std::string_view id) const;
  Node& node(std::string_view id);
  const Node& node(std::string_view id) const;

  const std::vector<std::string>& children_of(std::string_view id) const;

  /// Ids unreachable from the root. Reported, never fatal.
  const std::vector<std::string>& unreachable() const { return unreachable_; }

 private:
  friend PipelineGraph build_graph(const std::vector<NodeSpec>& specs,
                                   std::string_view root_id,
                                   const NodeRegistry& registry);
  PipelineGraph() = default;

  std::map<std::string, std::unique_ptr<Node>, std::less<>> nodes_;
  std::vector<std::string> order_;
  std::string root_id_;
  std::vector<std::string> unreachable_;
};

/// Empty when the spec edge set is acyclic; otherwise one witness cycle
/// [n0, ..., n0]. Edges to undeclared ids are ignored so the check also
/// works on specs with dangling children.
std::vector<std::string> find_cycle(const std::vector<NodeSpec>& specs);

/// Constructs every node and validates the graph shape. Throws:
///   duplicate_id        two specs share an id
///   dangling_child      a child id has no spec
///   unknown_node_type   registry has no factory for a type
///   missing_root        root_id has no spec
///   cycle_detected      the edge set has a cycle (path() names it)
PipelineGraph build_graph(const std::vector<NodeSpec>& specs,
                          std::string_view root_id,
                          const NodeRegistry& registry);

/// Executes the graph depth-first from the root. A node returning halt
/// keeps its children from being scheduled for that arrival; children of
/// a proceeding node are scheduled in declaration order. Nodes reachable
/// along several paths execute once per arrival. All nodes are reset()
/// before the walk. Returns `store`.
///
/// A throwing node aborts the run; the error carries the node id path.
ResultStore& traverse(PipelineGraph& graph, ResultStore& store,
                      TraversalObserver* observer = nullptr);

}  // namespace aqp
