#include "aqp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aqp/dsp.hpp"
#include "aqp/error.hpp"
#include "aqp/sdtw.hpp"

namespace aqp {
namespace {

FeatureMatrix gated_features(const Signal& sig, const WarpqParams& params,
                             const char* which) {
  const VadMask mask =
      vad_mask(sig, params.frame_len, params.hop, params.vad_threshold_db);
  if (mask.kept_count() == 0)
    throw Error(errc::no_voiced_frames,
                std::string(which) + " signal has no voiced frames");

  FeatureMatrix feats;
  if (params.features == WarpqParams::Features::mfcc) {
    feats = mfcc(sig, MfccParams{params.n_mels, params.n_coeffs,
                                 params.frame_len, params.hop, params.fmin,
                                 params.fmax});
  } else {
    feats = mel_spectrogram(sig, MelParams{params.n_mels, params.frame_len,
                                           params.hop, params.fmin,
                                           params.fmax});
  }
  feats = drop_masked_frames(feats, mask);
  if (feats.rows() < 2)
    throw Error(errc::too_short_after_vad,
                std::string(which) + " signal has fewer than 2 voiced frames");
  if (params.apply_cmvn) feats = cmvn(feats);
  return feats;
}

double aggregate(std::vector<double> costs, WarpqParams::Aggregation mode) {
  if (mode == WarpqParams::Aggregation::mean)
    return std::accumulate(costs.begin(), costs.end(), 0.0) /
           static_cast<double>(costs.size());
  std::sort(costs.begin(), costs.end());
  const std::size_t n = costs.size();
  if (n % 2 == 1) return costs[n / 2];
  return 0.5 * (costs[n / 2 - 1] + costs[n / 2]);
}

void check_rates(const Signal& ref_sig, const Signal& deg_sig) {
  if (ref_sig.sample_rate != deg_sig.sample_rate)
    throw Error(errc::bad_param,
                "sample rates differ: " + std::to_string(ref_sig.sample_rate) +
                    " vs " + std::to_string(deg_sig.sample_rate));
}

}  // namespace

MetricResult warpq_from_features(const FeatureMatrix& ref_feats,
                                 const FeatureMatrix& deg_feats,
                                 std::size_t patch_frames,
                                 std::size_t patch_hop,
                                 WarpqParams::Aggregation aggregation) {
  if (patch_hop == 0)
    throw Error(errc::bad_param, "patch_hop must be positive");
  if (ref_feats.cols() != deg_feats.cols())
    throw Error(errc::dimension_mismatch,
                "reference has " + std::to_string(ref_feats.cols()) +
                    " coefficients, degraded has " +
                    std::to_string(deg_feats.cols()));

  // Patches shrink to what both sides can support; short utterances then
  // score as a single patch.
  const std::size_t patch_len =
      std::min({patch_frames, deg_feats.rows(), ref_feats.rows()});
  if (patch_len < 2)
    throw Error(errc::too_short_after_vad,
                "fewer than 2 voiced frames available for patching");

  MetricResult result;
  result.metric_name = "warpq";
  std::vector<double> costs;
  for (std::size_t start = 0; start + patch_len <= deg_feats.rows();
       start += patch_hop) {
    const FeatureMatrix patch = deg_feats.slice_rows(start, patch_len);
    const double cost = sdtw_cost(ref_feats, patch);
    result.per_patch.push_back({costs.size(), cost});
    costs.push_back(cost);
  }
  result.score = aggregate(std::move(costs), aggregation);
  return result;
}

MetricResult warpq_score(const Signal& ref_sig, const Signal& deg_sig,
                         const WarpqParams& params) {
  check_rates(ref_sig, deg_sig);
  const FeatureMatrix ref_feats = gated_features(ref_sig, params, "reference");
  const FeatureMatrix deg_feats = gated_features(deg_sig, params, "degraded");
  return warpq_from_features(ref_feats, deg_feats, params.patch_frames,
                             params.patch_hop, params.aggregation);
}

MetricResult lsd_score(const Signal& ref_sig, const Signal& deg_sig,
                       const LsdParams& params) {
  check_rates(ref_sig, deg_sig);

  Signal ref = ref_sig;
  Signal deg = deg_sig;
  const std::size_t common = std::min(ref.samples.size(), deg.samples.size());
  ref.samples.resize(common);
  deg.samples.resize(common);

  const FeatureMatrix ref_power =
      power_spectrogram(ref, params.frame_len, params.hop);
  const FeatureMatrix deg_power =
      power_spectrogram(deg, params.frame_len, params.hop);

  double frame_sum = 0.0;
  for (std::size_t f = 0; f < ref_power.rows(); ++f) {
    double bin_sum = 0.0;
    for (std::size_t b = 0; b < ref_power.cols(); ++b) {
      const double d = 10.0 * std::log10(ref_power.at(f, b) + kLogEps) -
                       10.0 * std::log10(deg_power.at(f, b) + kLogEps);
      bin_sum += d * d;
    }
    frame_sum += std::sqrt(bin_sum / static_cast<double>(ref_power.cols()));
  }

  MetricResult result;
  result.metric_name = "lsd";
  result.score = frame_sum / static_cast<double>(ref_power.rows());
  return result;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(errc::length_mismatch,
                "need two equal-length series of at least 2 values, got " +
                    std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  const double n = static_cast<double>(x.size());

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;

  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0)
    throw Error(errc::constant_input,
                "correlation undefined for a constant series");
  return cov / std::sqrt(var_x * var_y);
}

std::vector<double> fractional_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> ranks(x.size(), 0.0);
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && x[idx[j]] == x[idx[i]]) ++j;
    // 1-based ranks i+1 .. j averaged over the tie group.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) /
                        2.0;
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(errc::length_mismatch,
                "need two equal-length series of at least 2 values, got " +
                    std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  const std::vector<double> rx = fractional_ranks(x);
  const std::vector<double> ry = fractional_ranks(y);
  return pearson(rx, ry);
}

}  // namespace aqp
