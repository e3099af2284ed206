#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aqp/node.hpp"

namespace aqp {

inline constexpr int kMaxIncludeDepth = 32;

/// A parsed pipeline file: one top-level JSON object whose keys are node
/// ids. `declared_ids` keeps the raw key sequence including duplicates,
/// which the object representation cannot hold.
struct PipelineDocument {
  Json root = Json::object();
  std::vector<std::string> declared_ids;
  std::filesystem::path source_path;
};

/// Reads and parses a pipeline file. Throws file_not_found,
/// malformed_json (message has line and column) or non_object_top_level.
PipelineDocument load_document(const std::filesystem::path& path);

/// Parses a JSON string as a pipeline document. `origin` is used for
/// diagnostics and for resolving relative include paths.
PipelineDocument parse_document(const std::string& text,
                                const std::filesystem::path& origin);

/// Turns the document into node specs, in declaration order. Splits each
/// entry into the common shape (type, children, output_key, draw_options)
/// and type-specific params. Throws duplicate_id, missing_type_field,
/// invalid_children_shape or invalid_field. When `registry` is given,
/// unknown type names are rejected here as well.
std::vector<NodeSpec> deserialize(const PipelineDocument& doc,
                                  const NodeRegistry* registry = nullptr);

/// Node specs from an already-parsed pipeline object (the value shape of
/// a pipeline file: id -> entry). Used by nodes that carry an inline
/// sub-pipeline in their params.
std::vector<NodeSpec> specs_from_json(const Json& pipeline_object);

/// Rewrites every encapsulation entry that references another file:
/// its "path" field is replaced by an inline "pipeline" object holding
/// the fully resolved sub-document. Nested pipelines inside loop params
/// are resolved too, so the result is self-contained. Include paths are
/// relative to the file containing them. Throws include_cycle (path()
/// holds the file chain) or include_depth_exceeded beyond
/// kMaxIncludeDepth levels.
PipelineDocument resolve_encapsulations(PipelineDocument doc);

struct Finding {
  errc code;
  std::string node_id;  // empty for document-level findings
  std::string message;
};

/// Full validation sweep for the `validate` command: parse, resolve,
/// deserialize and build. Collects as many independent findings as it
/// can instead of stopping at the first.
std::vector<Finding> validate_config(const std::filesystem::path& path,
                                     std::string_view root_id,
                                     const NodeRegistry& registry);

}  // namespace aqp
