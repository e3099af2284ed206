#pragma once

#include <span>
#include <vector>

namespace aqp {

/// Rational-rate conversion with a Kaiser-windowed sinc filter
/// (beta 8.6, 64 taps per side at the lower of the two rates). Identity
/// when the rates already match. Output length is
/// ceil(input_size * dst_rate / src_rate).
std::vector<double> resample(std::span<const double> input, int src_rate,
                             int dst_rate);

}  // namespace aqp
