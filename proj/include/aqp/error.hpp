#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aqp {

enum class errc {
  // configuration / parsing
  file_not_found,
  malformed_json,
  non_object_top_level,
  missing_type_field,
  invalid_children_shape,
  missing_param,
  invalid_field,
  include_cycle,
  include_depth_exceeded,
  // graph construction
  unknown_node_type,
  dangling_child,
  duplicate_id,
  cycle_detected,
  missing_root,
  // execution
  node_execution_failure,
  missing_key,
  type_mismatch,
  missing_iterable,
  invocation_overflow,
  // dataset / audio
  missing_column,
  bad_mos,
  empty_dataset,
  decode_error,
  unsupported_format,
  // dsp
  signal_too_short,
  bad_band,
  too_few_frames,
  bad_param,
  // metrics
  dimension_mismatch,
  patch_longer_than_reference,
  no_voiced_frames,
  too_short_after_vad,
  length_mismatch,
  constant_input,
  // outputs
  missing_metric_column,
  io_error,
};

/// Stable external name, e.g. errc::decode_error -> "DecodeError".
/// Used in CLI diagnostics and in score-cell error tokens.
std::string_view errc_name(errc code);

enum class ErrorStage { config, graph, runtime };

/// Coarse classification used for process exit codes.
ErrorStage error_stage(errc code);

/// Single exception type for the whole engine. `path()` carries context:
/// the chain of node ids for execution failures, the id cycle for
/// cycle_detected, or the file chain for include_cycle.
class Error : public std::runtime_error {
 public:
  Error(errc code, std::string detail);
  Error(errc code, std::string detail, std::vector<std::string> path);

  errc code() const { return code_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& path() const { return path_; }

  /// Copy of this error with `node_id` prepended to the path. Traversal
  /// uses this to identify the failing node (and, through nesting, the
  /// failing node inside an encapsulated sub-pipeline).
  Error with_node(std::string_view node_id) const;

 private:
  errc code_;
  std::string detail_;
  std::vector<std::string> path_;
};

}  // namespace aqp
