#pragma once

#include <cstddef>
#include <vector>

namespace aqp {

/// Mono audio signal. Samples are nominally in [-1, 1].
struct Signal {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
  double duration_seconds() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }

  bool operator==(const Signal&) const = default;
};

}  // namespace aqp
