#include "aqp/resample.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "aqp/error.hpp"

namespace aqp {
namespace {

constexpr double kKaiserBeta = 8.6;
constexpr double kHalfTaps = 64.0;  // per side, at the lower of the two rates

double bessel_i0(double x) {
  // Power series; converges quickly for the argument range used here.
  double sum = 1.0;
  double term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double kaiser(double u) {  // window position u in [-1, 1]
  double t = 1.0 - u * u;
  if (t < 0.0) return 0.0;
  return bessel_i0(kKaiserBeta * std::sqrt(t)) / bessel_i0(kKaiserBeta);
}

double sinc(double t) {
  if (t == 0.0) return 1.0;
  const double pt = M_PI * t;
  return std::sin(pt) / pt;
}

}  // namespace

std::vector<double> resample(std::span<const double> input, int src_rate,
                             int dst_rate) {
  if (src_rate <= 0 || dst_rate <= 0)
    throw Error(errc::bad_param, "sample rates must be positive");
  if (src_rate == dst_rate) return {input.begin(), input.end()};
  if (input.empty()) return {};

  const std::int64_t g = std::gcd(src_rate, dst_rate);
  const std::int64_t src_g = src_rate / g;
  const std::int64_t dst_g = dst_rate / g;

  // Anti-aliasing cutoff sits at the lower Nyquist; when downsampling the
  // kernel stretches by the same factor to keep its shape at that rate.
  const double scale = static_cast<double>(dst_rate) / src_rate;
  const double cutoff = 0.5 * std::min(1.0, scale);
  const double half_width = kHalfTaps / std::min(1.0, scale);

  const std::size_t out_size = static_cast<std::size_t>(
      (static_cast<std::int64_t>(input.size()) * dst_g + src_g - 1) / src_g);
  std::vector<double> output(out_size, 0.0);

  for (std::size_t n = 0; n < out_size; ++n) {
    const double center =
        static_cast<double>(static_cast<std::int64_t>(n) * src_g) / dst_g;
    const std::int64_t first =
        static_cast<std::int64_t>(std::ceil(center - half_width));
    const std::int64_t last =
        static_cast<std::int64_t>(std::floor(center + half_width));

    double acc = 0.0;
    double weight_sum = 0.0;
    for (std::int64_t i = first; i <= last; ++i) {
      const double x = static_cast<double>(i) - center;
      const double w =
          2.0 * cutoff * sinc(2.0 * cutoff * x) * kaiser(x / half_width);
      weight_sum += w;
      if (i >= 0 && i < static_cast<std::int64_t>(input.size()))
        acc += w * input[static_cast<std::size_t>(i)];
    }
    // Normalizing by the kernel sum keeps DC gain exactly 1.
    output[n] = weight_sum != 0.0 ? acc / weight_sum : 0.0;
  }
  return output;
}

}  // namespace aqp
