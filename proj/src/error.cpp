#include "aqp/error.hpp"

namespace aqp {
namespace {

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += "/";
    out += path[i];
  }
  return out;
}

std::string format_what(errc code, const std::string& detail,
                        const std::vector<std::string>& path) {
  std::string out = "[";
  out += errc_name(code);
  out += "] ";
  if (!path.empty()) {
    out += "at '";
    out += join_path(path);
    out += "': ";
  }
  out += detail;
  return out;
}

}  // namespace

std::string_view errc_name(errc code) {
  switch (code) {
    case errc::file_not_found: return "FileNotFound";
    case errc::malformed_json: return "MalformedJson";
    case errc::non_object_top_level: return "NonObjectTopLevel";
    case errc::missing_type_field: return "MissingTypeField";
    case errc::invalid_children_shape: return "InvalidChildrenShape";
    case errc::missing_param: return "MissingParam";
    case errc::invalid_field: return "InvalidField";
    case errc::include_cycle: return "IncludeCycle";
    case errc::include_depth_exceeded: return "IncludeDepthExceeded";
    case errc::unknown_node_type: return "UnknownNodeType";
    case errc::dangling_child: return "DanglingChild";
    case errc::duplicate_id: return "DuplicateId";
    case errc::cycle_detected: return "CycleDetected";
    case errc::missing_root: return "MissingRoot";
    case errc::node_execution_failure: return "NodeExecutionFailure";
    case errc::missing_key: return "MissingKey";
    case errc::type_mismatch: return "TypeMismatch";
    case errc::missing_iterable: return "MissingIterable";
    case errc::invocation_overflow: return "InvocationOverflow";
    case errc::missing_column: return "MissingColumn";
    case errc::bad_mos: return "BadMos";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::decode_error: return "DecodeError";
    case errc::unsupported_format: return "UnsupportedFormat";
    case errc::signal_too_short: return "SignalTooShort";
    case errc::bad_band: return "BadBand";
    case errc::too_few_frames: return "TooFewFrames";
    case errc::bad_param: return "BadParam";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::patch_longer_than_reference: return "PatchLongerThanReference";
    case errc::no_voiced_frames: return "NoVoicedFrames";
    case errc::too_short_after_vad: return "TooShortAfterVad";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::constant_input: return "ConstantInput";
    case errc::missing_metric_column: return "MissingMetricColumn";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

ErrorStage error_stage(errc code) {
  switch (code) {
    case errc::file_not_found:
    case errc::malformed_json:
    case errc::non_object_top_level:
    case errc::missing_type_field:
    case errc::invalid_children_shape:
    case errc::missing_param:
    case errc::invalid_field:
    case errc::include_cycle:
    case errc::include_depth_exceeded:
      return ErrorStage::config;
    case errc::unknown_node_type:
    case errc::dangling_child:
    case errc::duplicate_id:
    case errc::cycle_detected:
    case errc::missing_root:
      return ErrorStage::graph;
    default:
      return ErrorStage::runtime;
  }
}

Error::Error(errc code, std::string detail)
    : Error(code, std::move(detail), {}) {}

Error::Error(errc code, std::string detail, std::vector<std::string> path)
    : std::runtime_error(format_what(code, detail, path)),
      code_(code),
      detail_(std::move(detail)),
      path_(std::move(path)) {}

Error Error::with_node(std::string_view node_id) const {
  std::vector<std::string> extended;
  extended.reserve(path_.size() + 1);
  extended.emplace_back(node_id);
  extended.insert(extended.end(), path_.begin(), path_.end());
  return Error(code_, detail_, std::move(extended));
}

}  // namespace aqp
