#include "aqp/dsp.hpp"

#include <cmath>
#include <complex>

#include "aqp/error.hpp"

namespace aqp {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_framing(const Signal& sig, std::size_t frame_len, std::size_t hop) {
  if (!is_power_of_two(frame_len))
    throw Error(errc::bad_param, "frame_len must be a power of two");
  if (hop == 0 || hop > frame_len)
    throw Error(errc::bad_param, "hop must be in [1, frame_len]");
  if (sig.samples.size() < frame_len)
    throw Error(errc::signal_too_short,
                "signal has " + std::to_string(sig.samples.size()) +
                    " samples, needs at least " + std::to_string(frame_len));
}

std::size_t frame_count(std::size_t len, std::size_t frame_len,
                        std::size_t hop) {
  return 1 + (len - frame_len) / hop;
}

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

/// Mel band energies per frame (no log), frames x n_mels.
FeatureMatrix mel_energies(const Signal& sig, std::size_t n_mels,
                           std::size_t frame_len, std::size_t hop, double fmin,
                           double fmax) {
  if (fmax < 0.0) fmax = sig.sample_rate / 2.0;
  const FeatureMatrix power = power_spectrogram(sig, frame_len, hop);
  const FeatureMatrix bank =
      mel_filterbank(n_mels, frame_len, sig.sample_rate, fmin, fmax);

  FeatureMatrix out(power.rows(), n_mels);
  out.frame_len = frame_len;
  out.frame_hop = hop;
  for (std::size_t f = 0; f < power.rows(); ++f)
    for (std::size_t m = 0; m < n_mels; ++m) {
      double acc = 0.0;
      for (std::size_t b = 0; b < power.cols(); ++b)
        acc += bank.at(m, b) * power.at(f, b);
      out.at(f, m) = acc;
    }
  return out;
}

}  // namespace

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  return w;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FeatureMatrix power_spectrogram(const Signal& sig, std::size_t frame_len,
                                std::size_t hop) {
  check_framing(sig, frame_len, hop);
  const std::size_t frames = frame_count(sig.samples.size(), frame_len, hop);
  const std::size_t bins = frame_len / 2 + 1;
  const std::vector<double> window = hann_window(frame_len);

  FeatureMatrix out(frames, bins);
  out.frame_len = frame_len;
  out.frame_hop = hop;
  std::vector<std::complex<double>> buf(frame_len);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < frame_len; ++i)
      buf[i] = {sig.samples[start + i] * window[i], 0.0};
    fft(buf);
    for (std::size_t b = 0; b < bins; ++b) out.at(f, b) = std::norm(buf[b]);
  }
  return out;
}

FeatureMatrix mel_filterbank(std::size_t n_mels, std::size_t frame_len,
                             int rate, double fmin, double fmax) {
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= rate / 2.0))
    throw Error(errc::bad_band,
                "band [" + std::to_string(fmin) + ", " + std::to_string(fmax) +
                    "] must satisfy 0 <= fmin < fmax <= rate/2");
  if (n_mels < 2) throw Error(errc::bad_param, "n_mels must be >= 2");
  if (!is_power_of_two(frame_len))
    throw Error(errc::bad_param, "frame_len must be a power of two");

  const std::size_t bins = frame_len / 2 + 1;
  const double mel_lo = hz_to_mel(fmin);
  const double mel_hi = hz_to_mel(fmax);

  // n_mels + 2 edge frequencies, equally spaced in mel; filter m spans
  // edges m..m+2 with its peak at edge m+1.
  std::vector<double> edges(n_mels + 2);
  for (std::size_t k = 0; k < edges.size(); ++k)
    edges[k] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(k) /
                                      static_cast<double>(n_mels + 1));

  FeatureMatrix bank(n_mels, bins);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lower = edges[m];
    const double center = edges[m + 1];
    const double upper = edges[m + 2];
    double peak = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const double freq =
          static_cast<double>(b) * rate / static_cast<double>(frame_len);
      double w = 0.0;
      if (freq >= lower && freq <= center && center > lower)
        w = (freq - lower) / (center - lower);
      else if (freq > center && freq <= upper && upper > center)
        w = (upper - freq) / (upper - center);
      bank.at(m, b) = w;
      peak = std::max(peak, w);
    }
    if (peak > 0.0)
      for (std::size_t b = 0; b < bins; ++b) bank.at(m, b) /= peak;
  }
  return bank;
}

FeatureMatrix mel_spectrogram(const Signal& sig, const MelParams& params) {
  FeatureMatrix out = mel_energies(sig, params.n_mels, params.frame_len,
                                   params.hop, params.fmin, params.fmax);
  for (double& v : out.data()) v = std::log(v + kLogEps);
  return out;
}

FeatureMatrix mfcc(const Signal& sig, const MfccParams& params) {
  if (params.n_coeffs > params.n_mels)
    throw Error(errc::bad_param, "n_coeffs must be <= n_mels");
  MelParams mel_params{params.n_mels, params.frame_len, params.hop,
                       params.fmin, params.fmax};
  const FeatureMatrix log_mel = mel_spectrogram(sig, mel_params);

  const std::size_t m_count = params.n_mels;
  FeatureMatrix out(log_mel.rows(), params.n_coeffs);
  out.frame_len = params.frame_len;
  out.frame_hop = params.hop;
  const double scale0 = std::sqrt(1.0 / static_cast<double>(m_count));
  const double scale = std::sqrt(2.0 / static_cast<double>(m_count));
  for (std::size_t f = 0; f < log_mel.rows(); ++f)
    for (std::size_t k = 0; k < params.n_coeffs; ++k) {
      double acc = 0.0;
      for (std::size_t m = 0; m < m_count; ++m)
        acc += log_mel.at(f, m) *
               std::cos(M_PI * static_cast<double>(k) *
                        (2.0 * static_cast<double>(m) + 1.0) /
                        (2.0 * static_cast<double>(m_count)));
      out.at(f, k) = acc * (k == 0 ? scale0 : scale);
    }
  return out;
}

FeatureMatrix cmvn(const FeatureMatrix& feats) {
  if (feats.rows() < 2)
    throw Error(errc::too_few_frames, "cmvn needs at least 2 frames");

  FeatureMatrix out = feats;
  const double n = static_cast<double>(feats.rows());
  for (std::size_t c = 0; c < feats.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < feats.rows(); ++r) mean += feats.at(r, c);
    mean /= n;

    double var = 0.0;
    double max_residual = 0.0;
    for (std::size_t r = 0; r < feats.rows(); ++r) {
      const double d = feats.at(r, c) - mean;
      var += d * d;
      max_residual = std::max(max_residual, std::abs(d));
    }
    var /= n;

    // A column whose spread is at rounding level counts as constant.
    const bool constant = max_residual <= 1e-12 * (1.0 + std::abs(mean));
    const double inv_sd = constant ? 0.0 : 1.0 / std::sqrt(var);
    for (std::size_t r = 0; r < feats.rows(); ++r)
      out.at(r, c) = (feats.at(r, c) - mean) * inv_sd;
  }
  return out;
}

std::size_t VadMask::kept_count() const {
  std::size_t n = 0;
  for (bool k : keep) n += k ? 1 : 0;
  return n;
}

VadMask vad_mask(const Signal& sig, std::size_t frame_len, std::size_t hop,
                 double threshold_db) {
  if (threshold_db >= 0.0)
    throw Error(errc::bad_param, "threshold_db must be negative");
  check_framing(sig, frame_len, hop);

  const std::size_t frames = frame_count(sig.samples.size(), frame_len, hop);
  std::vector<double> energy(frames, 0.0);
  double max_energy = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < frame_len; ++i) {
      const double s = sig.samples[f * hop + i];
      acc += s * s;
    }
    energy[f] = acc;
    max_energy = std::max(max_energy, acc);
  }

  VadMask mask;
  mask.keep.resize(frames, false);
  if (max_energy <= 0.0) return mask;
  for (std::size_t f = 0; f < frames; ++f)
    mask.keep[f] = energy[f] > 0.0 &&
                   10.0 * std::log10(energy[f] / max_energy) >= threshold_db;
  return mask;
}

FeatureMatrix drop_masked_frames(const FeatureMatrix& feats,
                                 const VadMask& mask) {
  if (mask.keep.size() != feats.rows())
    throw Error(errc::dimension_mismatch,
                "mask length " + std::to_string(mask.keep.size()) +
                    " != frame count " + std::to_string(feats.rows()));
  FeatureMatrix out(mask.kept_count(), feats.cols());
  out.frame_len = feats.frame_len;
  out.frame_hop = feats.frame_hop;
  std::size_t r_out = 0;
  for (std::size_t r = 0; r < feats.rows(); ++r) {
    if (!mask.keep[r]) continue;
    for (std::size_t c = 0; c < feats.cols(); ++c)
      out.at(r_out, c) = feats.at(r, c);
    ++r_out;
  }
  return out;
}

}  // namespace aqp
