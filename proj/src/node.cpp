#include "aqp/node.hpp"

#include "aqp/nodes.hpp"

namespace aqp {
namespace {

[[noreturn]] void bad_field(const std::string& node_id, std::string_view name,
                            std::string_view expected) {
  throw Error(errc::invalid_field, "node '" + node_id + "': field '" +
                                       std::string(name) + "' must be " +
                                       std::string(expected));
}

}  // namespace

const Json* Node::find_param(std::string_view name) const {
  auto it = spec_.params.find(name);
  if (it == spec_.params.end()) return nullptr;
  return &*it;
}

std::string Node::require_string(std::string_view name) const {
  const Json* p = find_param(name);
  if (p == nullptr)
    throw Error(errc::missing_param, "node '" + spec_.id +
                                         "': required param '" +
                                         std::string(name) + "' is missing");
  if (!p->is_string()) bad_field(spec_.id, name, "a string");
  return p->get<std::string>();
}

std::string Node::string_or(std::string_view name, std::string fallback) const {
  const Json* p = find_param(name);
  if (p == nullptr) return fallback;
  if (!p->is_string()) bad_field(spec_.id, name, "a string");
  return p->get<std::string>();
}

double Node::require_number(std::string_view name) const {
  const Json* p = find_param(name);
  if (p == nullptr)
    throw Error(errc::missing_param, "node '" + spec_.id +
                                         "': required param '" +
                                         std::string(name) + "' is missing");
  if (!p->is_number()) bad_field(spec_.id, name, "a number");
  return p->get<double>();
}

double Node::number_or(std::string_view name, double fallback) const {
  const Json* p = find_param(name);
  if (p == nullptr) return fallback;
  if (!p->is_number()) bad_field(spec_.id, name, "a number");
  return p->get<double>();
}

std::int64_t Node::int_or(std::string_view name, std::int64_t fallback) const {
  const Json* p = find_param(name);
  if (p == nullptr) return fallback;
  if (!p->is_number_integer()) bad_field(spec_.id, name, "an integer");
  return p->get<std::int64_t>();
}

bool Node::bool_or(std::string_view name, bool fallback) const {
  const Json* p = find_param(name);
  if (p == nullptr) return fallback;
  if (!p->is_boolean()) bad_field(spec_.id, name, "a boolean");
  return p->get<bool>();
}

void NodeRegistry::add(std::string type_name, Factory factory) {
  auto [it, inserted] =
      factories_.emplace(std::move(type_name), std::move(factory));
  if (!inserted)
    throw Error(errc::duplicate_id,
                "node type '" + it->first + "' registered twice");
}

bool NodeRegistry::contains(std::string_view type_name) const {
  return factories_.find(type_name) != factories_.end();
}

std::unique_ptr<Node> NodeRegistry::make(const NodeSpec& spec) const {
  auto it = factories_.find(spec.node_type);
  if (it == factories_.end())
    throw Error(errc::unknown_node_type, "node '" + spec.id +
                                             "' has unknown type '" +
                                             spec.node_type + "'");
  return it->second(spec, *this);
}

std::vector<std::string> NodeRegistry::type_names() const {
  std::vector<std::string> out;
  out.reserve(factories_.size());
  for (const auto& [name, f] : factories_) out.push_back(name);
  return out;
}

NodeRegistry NodeRegistry::with_builtins() {
  NodeRegistry registry;
  register_builtin_nodes(registry);
  return registry;
}

}  // namespace aqp
