#pragma once

#include "aqp/feature_matrix.hpp"

namespace aqp {

/// Subsequence DTW cost of `patch` against `ref` (rows are frames,
/// Euclidean frame distance). The alignment may start and end anywhere
/// along the reference axis: the first patch row is charged only its
/// local cost at every reference position. Steps are (1,1), (1,0), (0,1)
/// in (patch, ref) with weights 2, 1, 1 on the local cost. Returns the
/// minimum over reference endpoints of accumulated cost divided by the
/// warping path length in cells; equal-cost paths tie-break to the
/// shorter one.
///
/// Requires matching column counts (DimensionMismatch), patch rows >= 2
/// and ref rows >= patch rows (PatchLongerThanReference).
double sdtw_cost(const FeatureMatrix& ref, const FeatureMatrix& patch);

}  // namespace aqp
