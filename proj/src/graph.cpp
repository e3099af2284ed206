#include "aqp/graph.hpp"

#include <algorithm>
#include <set>

#include "aqp/log.hpp"

namespace aqp {

bool PipelineGraph::contains(std::string_view id) const {
  return nodes_.find(id) != nodes_.end();
}

Node& PipelineGraph::node(std::string_view id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw Error(errc::missing_key, "no node '" + std::string(id) + "'");
  return *it->second;
}

const Node& PipelineGraph::node(std::string_view id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw Error(errc::missing_key, "no node '" + std::string(id) + "'");
  return *it->second;
}

const std::vector<std::string>& PipelineGraph::children_of(
    std::string_view id) const {
  return node(id).children();
}

namespace {

std::vector<std::string> find_unreachable(
    const std::vector<NodeSpec>& specs,
    const std::map<std::string, const NodeSpec*, std::less<>>& by_id,
    std::string_view root_id) {
  std::set<std::string, std::less<>> seen;
  std::vector<std::string_view> stack{root_id};
  while (!stack.empty()) {
    std::string_view id = stack.back();
    stack.pop_back();
    if (!seen.emplace(id).second) continue;
    for (const std::string& child : by_id.find(id)->second->children)
      stack.push_back(child);
  }
  std::vector<std::string> out;
  for (const NodeSpec& s : specs)
    if (seen.find(s.id) == seen.end()) out.push_back(s.id);
  return out;
}

}  // namespace

// Depth-first with an explicit stack so deep graphs cannot overflow the
// call stack. On a back edge the witness is the stack segment from the
// repeated id, closed by that id again.
std::vector<std::string> find_cycle(const std::vector<NodeSpec>& specs) {
  std::map<std::string, const NodeSpec*, std::less<>> by_id;
  for (const NodeSpec& s : specs) by_id.emplace(s.id, &s);

  enum class Color { white, gray, black };
  std::map<std::string, Color, std::less<>> color;
  for (const NodeSpec& s : specs) color[s.id] = Color::white;

  struct Frame {
    const NodeSpec* spec;
    std::size_t next_child = 0;
  };

  for (const NodeSpec& start : specs) {
    if (color[start.id] != Color::white) continue;
    std::vector<Frame> stack;
    stack.push_back({&start});
    color[start.id] = Color::gray;
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next_child == frame.spec->children.size()) {
        color[frame.spec->id] = Color::black;
        stack.pop_back();
        continue;
      }
      const std::string& child = frame.spec->children[frame.next_child++];
      auto child_it = by_id.find(child);
      if (child_it == by_id.end()) continue;
      Color c = color[child];
      if (c == Color::gray) {
        std::vector<std::string> witness;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& f) {
          return f.spec->id == child;
        });
        for (; it != stack.end(); ++it) witness.push_back(it->spec->id);
        witness.push_back(child);
        return witness;
      }
      if (c == Color::white) {
        color[child] = Color::gray;
        stack.push_back({child_it->second});
      }
    }
  }
  return {};
}

PipelineGraph build_graph(const std::vector<NodeSpec>& specs,
                          std::string_view root_id,
                          const NodeRegistry& registry) {
  std::map<std::string, const NodeSpec*, std::less<>> by_id;
  for (const NodeSpec& s : specs) {
    auto [it, inserted] = by_id.emplace(s.id, &s);
    if (!inserted)
      throw Error(errc::duplicate_id, "node id '" + s.id + "' declared twice");
  }

  for (const NodeSpec& s : specs)
    for (const std::string& child : s.children)
      if (by_id.find(child) == by_id.end())
        throw Error(errc::dangling_child, "node '" + s.id +
                                              "' lists unknown child '" +
                                              child + "'");

  if (by_id.find(root_id) == by_id.end())
    throw Error(errc::missing_root,
                "root node '" + std::string(root_id) + "' not declared");

  std::vector<std::string> cycle = find_cycle(specs);
  if (!cycle.empty())
    throw Error(errc::cycle_detected, "pipeline contains a cycle",
                std::move(cycle));

  PipelineGraph graph;
  graph.root_id_ = std::string(root_id);
  for (const NodeSpec& s : specs) {
    graph.nodes_.emplace(s.id, registry.make(s));
    graph.order_.push_back(s.id);
  }
  graph.unreachable_ = find_unreachable(specs, by_id, root_id);
  for (const std::string& id : graph.unreachable_)
    log_warn("node '" + id + "' is unreachable from root '" +
             graph.root_id_ + "'");
  return graph;
}

ResultStore& traverse(PipelineGraph& graph, ResultStore& store,
                      TraversalObserver* observer) {
  for (const std::string& id : graph.order()) graph.node(id).reset();

  // Children are pushed in reverse so they pop in declaration order.
  std::vector<Node*> stack{&graph.node(graph.root_id())};
  while (!stack.empty()) {
    Node* node = stack.back();
    stack.pop_back();

    ExecStatus status;
    try {
      status = node->execute(store);
    } catch (const Error& e) {
      throw e.with_node(node->id());
    } catch (const std::exception& e) {
      throw Error(errc::node_execution_failure, e.what())
          .with_node(node->id());
    }
    if (observer != nullptr) observer->on_visit(*node, status);
    if (status == ExecStatus::halt) continue;

    const std::vector<std::string>& children = node->children();
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      stack.push_back(&graph.node(*it));
  }
  return store;
}

}  // namespace aqp
