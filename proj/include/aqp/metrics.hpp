#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aqp/feature_matrix.hpp"
#include "aqp/signal.hpp"

namespace aqp {

struct PatchScore {
  std::size_t patch_index = 0;
  double cost = 0.0;

  bool operator==(const PatchScore&) const = default;
};

struct MetricResult {
  std::string metric_name;
  double score = 0.0;
  std::vector<PatchScore> per_patch;
};

struct WarpqParams {
  std::size_t frame_len = 512;
  std::size_t hop = 128;
  std::size_t n_mels = 32;
  std::size_t n_coeffs = 13;
  double fmin = 0.0;
  double fmax = -1.0;  // < 0 means rate / 2
  double vad_threshold_db = -35.0;
  /// 0.4 s worth of hop-spaced frames at 16 kHz with the default hop.
  std::size_t patch_frames = 50;
  std::size_t patch_hop = 25;
  bool apply_cmvn = true;
  enum class Features { mfcc, mel_spectrogram };
  Features features = Features::mfcc;
  enum class Aggregation { median, mean };
  Aggregation aggregation = Aggregation::median;
};

/// Alignment-cost quality metric: VAD-gate both signals' frames, take
/// per-frame features (MFCC by default, log mel spectrogram as the
/// drop-in alternative), normalize with CMVN, split the degraded
/// features into fixed-length patches and score each against the full
/// reference with subsequence DTW. The score aggregates the patch costs
/// (median by default); higher means worse quality. Per-patch costs are
/// kept in the result.
///
/// Throws NoVoicedFrames naming the silent signal, and TooShortAfterVad
/// when fewer than 2 frames survive gating on either side.
MetricResult warpq_score(const Signal& ref_sig, const Signal& deg_sig,
                         const WarpqParams& params = {});

/// Patch-level core shared by warpq_score and the pipeline nodes, for
/// features that are already gated and normalized. The patch length
/// clamps to what both feature matrices can support; fewer than 2
/// usable frames raises TooShortAfterVad.
MetricResult warpq_from_features(const FeatureMatrix& ref_feats,
                                 const FeatureMatrix& deg_feats,
                                 std::size_t patch_frames,
                                 std::size_t patch_hop,
                                 WarpqParams::Aggregation aggregation);

struct LsdParams {
  std::size_t frame_len = 512;
  std::size_t hop = 128;
};

/// Log-spectral distance in dB: mean over frames of the RMS difference
/// of the 10*log10 power spectra. Signals are truncated to the shorter
/// length; sample rates must match.
MetricResult lsd_score(const Signal& ref_sig, const Signal& deg_sig,
                       const LsdParams& params = {});

/// Sample Pearson correlation. Lengths must match and be >= 2
/// (LengthMismatch); both inputs must be nonconstant (ConstantInput).
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson of fractional ranks; ties share the average of their ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks with ties averaged, e.g. [10, 20, 20, 30] ->
/// [1, 2.5, 2.5, 4].
std::vector<double> fractional_ranks(std::span<const double> x);

}  // namespace aqp
