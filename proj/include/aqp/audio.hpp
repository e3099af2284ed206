#pragma once

#include <filesystem>
#include <string>

#include "aqp/dataset.hpp"
#include "aqp/signal.hpp"

namespace aqp {

/// Column header names expected in a dataset csv.
struct DatasetColumns {
  std::string ref = "ref";
  std::string deg = "deg";
  std::string codec = "codec";
  std::string mos = "mos";
};

/// Loads an audio file as a mono signal at `target_rate`: channels are
/// averaged, then the result is resampled when the file rate differs.
/// Throws decode_error / unsupported_format for bad files and
/// decode_error for non-finite samples.
Signal load_audio(const std::filesystem::path& path, int target_rate);

/// Parses a dataset csv. The header must contain the four configured
/// columns (any order, extra columns ignored). MOS must parse as a
/// number in [1, 5]. Relative audio paths are resolved against the csv's
/// directory into ref_resolved / deg_resolved. Throws missing_column,
/// bad_mos or empty_dataset.
DatasetTable load_dataset(const std::filesystem::path& csv_path,
                          const DatasetColumns& columns = {});

}  // namespace aqp
