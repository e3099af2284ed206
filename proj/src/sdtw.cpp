#include "aqp/sdtw.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "aqp/error.hpp"

namespace aqp {
namespace {

double frame_distance(const FeatureMatrix& a, std::size_t ra,
                      const FeatureMatrix& b, std::size_t rb) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const double d = a.at(ra, c) - b.at(rb, c);
    acc += d * d;
  }
  return std::sqrt(acc);
}

struct Cell {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t length = 0;  // path length in cells

  bool better_than(const Cell& other) const {
    if (cost != other.cost) return cost < other.cost;
    return length < other.length;
  }
};

}  // namespace

double sdtw_cost(const FeatureMatrix& ref, const FeatureMatrix& patch) {
  if (ref.cols() != patch.cols())
    throw Error(errc::dimension_mismatch,
                "reference has " + std::to_string(ref.cols()) +
                    " coefficients, patch has " +
                    std::to_string(patch.cols()));
  if (patch.rows() < 2)
    throw Error(errc::bad_param, "patch must have at least 2 frames");
  if (ref.rows() < patch.rows())
    throw Error(errc::patch_longer_than_reference,
                "patch has " + std::to_string(patch.rows()) +
                    " frames, reference only " + std::to_string(ref.rows()));

  const std::size_t p_rows = patch.rows();
  const std::size_t r_rows = ref.rows();

  // Rolling rows of the accumulated-cost matrix, indexed by reference
  // position. prev = patch row p-1, curr = patch row p.
  std::vector<Cell> prev(r_rows);
  std::vector<Cell> curr(r_rows);

  for (std::size_t r = 0; r < r_rows; ++r)
    prev[r] = {frame_distance(patch, 0, ref, r), 1};

  for (std::size_t p = 1; p < p_rows; ++p) {
    for (std::size_t r = 0; r < r_rows; ++r) {
      const double local = frame_distance(patch, p, ref, r);
      Cell best{prev[r].cost + local, prev[r].length + 1};  // vertical
      if (r > 0) {
        const Cell diagonal{prev[r - 1].cost + 2.0 * local,
                            prev[r - 1].length + 1};
        if (diagonal.better_than(best)) best = diagonal;
        const Cell horizontal{curr[r - 1].cost + local, curr[r - 1].length + 1};
        if (horizontal.better_than(best)) best = horizontal;
      }
      curr[r] = best;
    }
    std::swap(prev, curr);
  }

  double best_score = std::numeric_limits<double>::infinity();
  for (const Cell& end : prev)
    best_score =
        std::min(best_score, end.cost / static_cast<double>(end.length));
  return best_score;
}

}  // namespace aqp
