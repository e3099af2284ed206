#include "aqp/dataset_gen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "aqp/error.hpp"
#include "aqp/wav.hpp"

namespace aqp {
namespace {

constexpr int kRate = 16000;
constexpr double kDuration = 2.0;
constexpr double kPeak = 0.25;
// Dither keeps every spectral bin well above the log floor while staying
// far below the -35 dB VAD threshold, so silent stretches are still
// classified as silent.
constexpr double kDitherDb = -55.0;

/// Deterministic gaussian source: Box-Muller over raw mt19937_64 words,
/// so the byte stream does not depend on the standard library's
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct Burst {
  double start;   // seconds
  double length;  // seconds
};

/// 0..1 envelope: unity inside each burst with 20 ms raised-cosine
/// edges, zero in the gaps.
double envelope_at(const std::vector<Burst>& bursts, double t) {
  constexpr double kRamp = 0.02;
  double value = 0.0;
  for (const Burst& b : bursts) {
    if (t < b.start || t > b.start + b.length) continue;
    const double into = t - b.start;
    const double from_end = b.start + b.length - t;
    double e = 1.0;
    if (into < kRamp) e = 0.5 - 0.5 * std::cos(M_PI * into / kRamp);
    if (from_end < kRamp)
      e = std::min(e, 0.5 - 0.5 * std::cos(M_PI * from_end / kRamp));
    value = std::max(value, e);
  }
  return value;
}

std::vector<double> harmonic_glide(double f0_start, double f0_end,
                                   const std::vector<Burst>& bursts) {
  const std::size_t n = static_cast<std::size_t>(kRate * kDuration);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / kRate;
    // Phase of a linear glide: integral of f0 + (f0_end-f0_start)*t/T.
    const double sweep = (f0_end - f0_start) / kDuration;
    double sample = 0.0;
    for (int h = 1; h <= 5; ++h) {
      const double phase =
          2.0 * M_PI * h * (f0_start * t + 0.5 * sweep * t * t);
      sample += std::sin(phase) / h;
    }
    out[i] = sample * envelope_at(bursts, t);
  }
  return out;
}

/// Noise shaped by two formant-like resonators whose center frequencies
/// sweep in opposite directions. The moving resonances give the features
/// a deterministic trajectory that added noise erodes gradually, which
/// keeps metric scores separating even at low SNR.
std::vector<double> shaped_noise(const std::vector<Burst>& bursts,
                                 double f1_start, double f1_end,
                                 double f2_start, double f2_end, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(kRate * kDuration);
  std::vector<double> out(n, 0.0);
  constexpr double kR = 0.97;
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / kRate;
    const double frac = t / kDuration;
    const double f1 = f1_start + (f1_end - f1_start) * frac;
    const double f2 = f2_start + (f2_end - f2_start) * frac;
    const double noise = rng.gaussian();
    const double ya = 2.0 * kR * std::cos(2.0 * M_PI * f1 / kRate) * a1 -
                      kR * kR * a2 + noise;
    a2 = a1;
    a1 = ya;
    const double yb = 2.0 * kR * std::cos(2.0 * M_PI * f2 / kRate) * b1 -
                      kR * kR * b2 + noise;
    b2 = b1;
    b1 = yb;
    out[i] = (ya + yb) * envelope_at(bursts, t);
  }
  return out;
}

void normalize_peak(std::vector<double>& x, double peak) {
  double max_abs = 0.0;
  for (double v : x) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs <= 0.0) return;
  const double gain = peak / max_abs;
  for (double& v : x) v *= gain;
}

void add_dither(std::vector<double>& x, Rng& rng) {
  const double sigma = kPeak * std::pow(10.0, kDitherDb / 20.0);
  for (double& v : x) v += sigma * rng.gaussian();
}

std::vector<double> with_awgn(const std::vector<double>& x, double snr_db,
                              Rng& rng) {
  double power = 0.0;
  for (double v : x) power += v * v;
  power /= static_cast<double>(x.size());
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  std::vector<double> out(x);
  for (double& v : out) v += sigma * rng.gaussian();
  return out;
}

std::vector<double> with_shift(const std::vector<double>& x,
                               std::size_t shift_samples, Rng& rng) {
  const double sigma = kPeak * std::pow(10.0, kDitherDb / 20.0);
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = i < shift_samples ? sigma * rng.gaussian()
                               : x[i - shift_samples];
  return out;
}

std::string fmt_mos(double mos) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", mos);
  return buf;
}

}  // namespace

CorpusSummary generate_corpus(const std::filesystem::path& dir,
                              std::uint64_t seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "wav", ec);
  if (ec)
    throw Error(errc::io_error,
                "cannot create '" + (dir / "wav").generic_string() +
                    "': " + ec.message());

  Rng rng(seed);

  struct Reference {
    std::string name;
    std::vector<double> samples;
  };
  std::vector<Reference> references;

  const std::vector<Burst> pattern_a{
      {0.05, 0.30}, {0.45, 0.25}, {0.80, 0.35}, {1.30, 0.25}, {1.65, 0.30}};
  const std::vector<Burst> pattern_b{
      {0.10, 0.25}, {0.50, 0.35}, {1.00, 0.30}, {1.45, 0.20}, {1.75, 0.20}};

  references.push_back({"tone_a", harmonic_glide(110.0, 150.0, pattern_a)});
  references.push_back({"tone_b", harmonic_glide(165.0, 120.0, pattern_b)});
  references.push_back(
      {"ssn_a", shaped_noise(pattern_b, 350.0, 1400.0, 2600.0, 900.0, rng)});
  references.push_back(
      {"ssn_b", shaped_noise(pattern_a, 1500.0, 450.0, 1000.0, 2900.0, rng)});

  for (Reference& ref : references) {
    normalize_peak(ref.samples, kPeak);
    add_dither(ref.samples, rng);
  }

  struct Condition {
    std::string name;
    std::string codec;
    double mos;
  };
  const double kSnrLevels[] = {30.0, 20.0, 10.0, 0.0};
  const std::vector<Condition> conditions{
      {"clean", "clean", 4.85}, {"awgn30", "awgn", 4.50},
      {"awgn20", "awgn", 3.70}, {"awgn10", "awgn", 2.60},
      {"awgn0", "awgn", 1.50},  {"shift", "shift", 4.20}};

  std::string csv = "ref,deg,codec,mos\n";
  std::size_t rows = 0;
  for (const Reference& ref : references) {
    const std::string ref_rel = "wav/" + ref.name + "_ref.wav";
    write_wav_pcm16(dir / ref_rel, ref.samples, kRate);

    for (const Condition& cond : conditions) {
      std::vector<double> degraded;
      if (cond.name == "clean") {
        degraded = ref.samples;
      } else if (cond.name == "shift") {
        degraded = with_shift(ref.samples, kRate / 20, rng);  // 50 ms
      } else {
        const std::size_t level = &cond - conditions.data() - 1;
        degraded = with_awgn(ref.samples, kSnrLevels[level], rng);
      }
      const std::string deg_rel =
          "wav/" + ref.name + "_" + cond.name + ".wav";
      write_wav_pcm16(dir / deg_rel, degraded, kRate);

      double mos = cond.mos + (rng.uniform() - 0.5) * 0.2;
      mos = std::min(5.0, std::max(1.0, mos));
      csv += ref_rel + "," + deg_rel + "," + cond.codec + "," +
             fmt_mos(mos) + "\n";
      ++rows;
    }
  }

  const std::filesystem::path csv_path = dir / "dataset.csv";
  std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(errc::io_error,
                "cannot open '" + csv_path.generic_string() +
                    "' for writing");
  out << csv;
  if (!out)
    throw Error(errc::io_error,
                "write failed for '" + csv_path.generic_string() + "'");

  return {references.size(), rows, csv_path};
}

}  // namespace aqp
