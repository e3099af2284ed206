#pragma once

#include <cstddef>
#include <vector>

#include "aqp/feature_matrix.hpp"
#include "aqp/signal.hpp"

namespace aqp {

/// Log floor added to band energies before taking the log, so digital
/// silence stays finite.
inline constexpr double kLogEps = 1e-10;

/// Symmetric Hann window of length n.
std::vector<double> hann_window(std::size_t n);

/// Hz to mel and back, mel(f) = 2595 * log10(1 + f / 700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Hann-windowed magnitude-squared DFT per frame. No padding or
/// centering: frames = 1 + floor((len - frame_len) / hop), each with
/// frame_len / 2 + 1 one-sided bins. frame_len must be a power of two,
/// hop <= frame_len, len(sig) >= frame_len (else SignalTooShort).
FeatureMatrix power_spectrogram(const Signal& sig, std::size_t frame_len,
                                std::size_t hop);

/// Triangular mel filterbank, n_mels x (frame_len / 2 + 1). Centers are
/// equally spaced on the mel scale between fmin and fmax; each row is
/// peak-normalized to 1. Requires 0 <= fmin < fmax <= rate / 2 (else
/// BadBand) and n_mels >= 2.
FeatureMatrix mel_filterbank(std::size_t n_mels, std::size_t frame_len,
                             int rate, double fmin, double fmax);

struct MelParams {
  std::size_t n_mels = 32;
  std::size_t frame_len = 512;
  std::size_t hop = 128;
  double fmin = 0.0;
  double fmax = -1.0;  // < 0 means rate / 2
};

/// log(mel band energies + eps), frames x n_mels.
FeatureMatrix mel_spectrogram(const Signal& sig, const MelParams& params);

struct MfccParams {
  std::size_t n_mels = 32;
  std::size_t n_coeffs = 13;
  std::size_t frame_len = 512;
  std::size_t hop = 128;
  double fmin = 0.0;
  double fmax = -1.0;  // < 0 means rate / 2
};

/// Orthonormal DCT-II of the log mel energies, keeping coefficients
/// 0..n_coeffs-1. Requires n_coeffs <= n_mels.
FeatureMatrix mfcc(const Signal& sig, const MfccParams& params);

/// Per-coefficient standardization across frames: mean 0, variance 1
/// (population variance). Zero-variance coefficients become all-zero
/// columns. Requires frames >= 2 (else TooFewFrames).
FeatureMatrix cmvn(const FeatureMatrix& feats);

struct VadMask {
  std::vector<bool> keep;

  std::size_t size() const { return keep.size(); }
  std::size_t kept_count() const;

  bool operator==(const VadMask&) const = default;
};

/// Energy gate per frame, relative to the loudest frame: keep iff
/// 10 * log10(energy / max energy) >= threshold_db. threshold_db must be
/// negative. An all-silent signal keeps nothing.
VadMask vad_mask(const Signal& sig, std::size_t frame_len, std::size_t hop,
                 double threshold_db);

/// Copy of the rows where mask.keep is true. Mask length must equal the
/// row count.
FeatureMatrix drop_masked_frames(const FeatureMatrix& feats,
                                 const VadMask& mask);

}  // namespace aqp
