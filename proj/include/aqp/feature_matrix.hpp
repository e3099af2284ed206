#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "aqp/error.hpp"

namespace aqp {

/// Dense row-major matrix. Rows are time frames for spectral features.
/// frame_len / frame_hop record the framing that produced the rows; both
/// stay 0 for matrices that are not framed audio.
class FeatureMatrix {
 public:
  std::size_t frame_len = 0;
  std::size_t frame_hop = 0;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Copy of rows [first, first + count).
  FeatureMatrix slice_rows(std::size_t first, std::size_t count) const {
    if (first + count > rows_)
      throw Error(errc::bad_param, "row slice out of range");
    FeatureMatrix out(count, cols_);
    out.frame_len = frame_len;
    out.frame_hop = frame_hop;
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_),
              out.data_.begin());
    return out;
  }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace aqp
