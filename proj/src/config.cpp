#include "aqp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aqp/graph.hpp"

namespace aqp {
namespace {

/// Records top-level object keys in source order, duplicates included.
/// The DOM collapses repeated keys, so this is the only place where a
/// duplicate node id can still be seen.
class TopLevelKeyCollector : public nlohmann::json_sax<Json> {
 public:
  std::vector<std::string> keys;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override {
    ++depth_;
    return true;
  }
  bool key(string_t& val) override {
    if (depth_ == 1) keys.push_back(val);
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }
  bool start_array(std::size_t) override {
    ++depth_;
    return true;
  }
  bool end_array() override {
    --depth_;
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  int depth_ = 0;
};

std::string strip_exception_tag(const char* what) {
  // nlohmann prefixes messages with "[json.exception.parse_error.101] ".
  std::string m(what);
  if (!m.empty() && m.front() == '[') {
    std::size_t close = m.find("] ");
    if (close != std::string::npos) m = m.substr(close + 2);
  }
  return m;
}

struct EncapsulationResolver {
  std::vector<std::filesystem::path> chain;  // canonical, top file first

  static std::filesystem::path canonical_of(const std::filesystem::path& p) {
    std::error_code ec;
    std::filesystem::path c = std::filesystem::weakly_canonical(p, ec);
    return ec ? p : c;
  }

  std::vector<std::string> chain_with(const std::filesystem::path& next) const {
    std::vector<std::string> out;
    out.reserve(chain.size() + 1);
    for (const auto& p : chain) out.push_back(p.generic_string());
    out.push_back(next.generic_string());
    return out;
  }

  void resolve_object(Json& pipeline, const std::filesystem::path& base_dir) {
    for (auto& [id, entry] : pipeline.items()) {
      if (!entry.is_object()) continue;  // deserialize reports the shape
      auto type_it = entry.find("type");
      if (type_it != entry.end() && type_it->is_string() &&
          type_it->get<std::string>() == "encapsulation") {
        auto path_it = entry.find("path");
        if (path_it != entry.end()) {
          if (!path_it->is_string())
            throw Error(errc::invalid_field,
                        "node '" + id + "': field 'path' must be a string");
          std::filesystem::path target(path_it->get<std::string>());
          if (target.is_relative()) target = base_dir / target;
          inline_file(entry, id, target);
          continue;
        }
      }
      auto nested_it = entry.find("pipeline");
      if (nested_it != entry.end() && nested_it->is_object())
        resolve_object(*nested_it, base_dir);
    }
  }

  void inline_file(Json& entry, const std::string& id,
                   const std::filesystem::path& target) {
    std::filesystem::path canon = canonical_of(target);
    for (const auto& seen : chain)
      if (seen == canon)
        throw Error(errc::include_cycle,
                    "encapsulation '" + id + "' includes a file already on "
                    "the include chain",
                    chain_with(canon));
    if (chain.size() > static_cast<std::size_t>(kMaxIncludeDepth))
      throw Error(errc::include_depth_exceeded,
                  "include depth exceeds " + std::to_string(kMaxIncludeDepth),
                  chain_with(canon));

    PipelineDocument sub = load_document(target);
    chain.push_back(canon);
    resolve_object(sub.root, target.parent_path());
    chain.pop_back();

    entry.erase("path");
    entry["pipeline"] = std::move(sub.root);
  }
};

NodeSpec deserialize_entry(const std::string& id, const Json& value) {
  if (!value.is_object())
    throw Error(errc::invalid_field,
                "entry '" + id + "' must be a JSON object");

  NodeSpec spec;
  spec.id = id;

  auto type_it = value.find("type");
  if (type_it == value.end())
    throw Error(errc::missing_type_field,
                "entry '" + id + "' has no 'type' field");
  if (!type_it->is_string())
    throw Error(errc::invalid_field,
                "entry '" + id + "': field 'type' must be a string");
  spec.node_type = type_it->get<std::string>();

  auto children_it = value.find("children");
  if (children_it != value.end()) {
    if (!children_it->is_array())
      throw Error(errc::invalid_children_shape,
                  "entry '" + id + "': 'children' must be an array of ids");
    for (const Json& child : *children_it) {
      if (!child.is_string())
        throw Error(errc::invalid_children_shape,
                    "entry '" + id + "': 'children' must be an array of ids");
      spec.children.push_back(child.get<std::string>());
    }
  }

  auto out_it = value.find("output_key");
  if (out_it != value.end()) {
    if (!out_it->is_string())
      throw Error(errc::invalid_field,
                  "entry '" + id + "': field 'output_key' must be a string");
    spec.output_key = out_it->get<std::string>();
  }

  auto draw_it = value.find("draw_options");
  if (draw_it != value.end()) {
    if (!draw_it->is_object())
      throw Error(errc::invalid_field,
                  "entry '" + id +
                      "': field 'draw_options' must be an object of strings");
    for (const auto& [k, v] : draw_it->items()) {
      if (!v.is_string())
        throw Error(errc::invalid_field,
                    "entry '" + id +
                        "': field 'draw_options' must be an object of strings");
      spec.draw_options.emplace(k, v.get<std::string>());
    }
  }

  for (const auto& [k, v] : value.items()) {
    if (k == "type" || k == "children" || k == "output_key" ||
        k == "draw_options")
      continue;
    spec.params[k] = v;
  }
  return spec;
}

std::vector<std::string> duplicate_ids(
    const std::vector<std::string>& declared) {
  std::set<std::string> seen;
  std::vector<std::string> dups;
  for (const std::string& id : declared)
    if (!seen.insert(id).second) dups.push_back(id);
  return dups;
}

}  // namespace

PipelineDocument parse_document(const std::string& text,
                                const std::filesystem::path& origin) {
  PipelineDocument doc;
  doc.source_path = origin;
  try {
    doc.root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(errc::malformed_json, origin.generic_string() + ": " +
                                          strip_exception_tag(e.what()));
  }
  if (!doc.root.is_object())
    throw Error(errc::non_object_top_level,
                origin.generic_string() +
                    ": top level must be a JSON object of node entries");

  TopLevelKeyCollector collector;
  Json::sax_parse(text, &collector);
  doc.declared_ids = std::move(collector.keys);
  return doc;
}

PipelineDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(errc::file_not_found,
                "cannot open '" + path.generic_string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), path);
}

std::vector<NodeSpec> deserialize(const PipelineDocument& doc,
                                  const NodeRegistry* registry) {
  for (const std::string& id : duplicate_ids(doc.declared_ids))
    throw Error(errc::duplicate_id, "node id '" + id + "' declared twice");

  std::vector<NodeSpec> specs;
  specs.reserve(doc.root.size());
  for (const auto& [id, value] : doc.root.items()) {
    NodeSpec spec = deserialize_entry(id, value);
    if (registry != nullptr && !registry->contains(spec.node_type))
      throw Error(errc::unknown_node_type, "node '" + id +
                                               "' has unknown type '" +
                                               spec.node_type + "'");
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<NodeSpec> specs_from_json(const Json& pipeline_object) {
  if (!pipeline_object.is_object())
    throw Error(errc::non_object_top_level,
                "inline pipeline must be a JSON object of node entries");
  std::vector<NodeSpec> specs;
  specs.reserve(pipeline_object.size());
  for (const auto& [id, value] : pipeline_object.items())
    specs.push_back(deserialize_entry(id, value));
  return specs;
}

PipelineDocument resolve_encapsulations(PipelineDocument doc) {
  EncapsulationResolver resolver;
  resolver.chain.push_back(
      EncapsulationResolver::canonical_of(doc.source_path));
  resolver.resolve_object(doc.root, doc.source_path.parent_path());
  return doc;
}

std::vector<Finding> validate_config(const std::filesystem::path& path,
                                     std::string_view root_id,
                                     const NodeRegistry& registry) {
  std::vector<Finding> findings;
  PipelineDocument doc;
  try {
    doc = resolve_encapsulations(load_document(path));
  } catch (const Error& e) {
    findings.push_back({e.code(), "", e.detail()});
    return findings;
  }

  for (const std::string& id : duplicate_ids(doc.declared_ids))
    findings.push_back(
        {errc::duplicate_id, id, "node id '" + id + "' declared twice"});

  std::vector<NodeSpec> specs;
  std::set<std::string> ids;
  for (const auto& [id, value] : doc.root.items()) {
    ids.insert(id);
    try {
      specs.push_back(deserialize_entry(id, value));
    } catch (const Error& e) {
      findings.push_back({e.code(), id, e.detail()});
    }
  }

  for (const NodeSpec& spec : specs) {
    if (!registry.contains(spec.node_type)) {
      findings.push_back({errc::unknown_node_type, spec.id,
                          "unknown type '" + spec.node_type + "'"});
      continue;
    }
    try {
      registry.make(spec);
    } catch (const Error& e) {
      findings.push_back({e.code(), spec.id, e.detail()});
    }
  }

  for (const NodeSpec& spec : specs)
    for (const std::string& child : spec.children)
      if (ids.find(child) == ids.end())
        findings.push_back({errc::dangling_child, spec.id,
                            "unknown child '" + child + "'"});

  if (ids.find(std::string(root_id)) == ids.end())
    findings.push_back({errc::missing_root, "",
                        "root node '" + std::string(root_id) +
                            "' not declared"});

  std::vector<std::string> cycle = find_cycle(specs);
  if (!cycle.empty()) {
    std::string msg = "cycle:";
    for (const std::string& id : cycle) msg += " " + id;
    findings.push_back({errc::cycle_detected, cycle.front(), msg});
  }
  return findings;
}

}  // namespace aqp
