#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace aqp {

/// Decoded WAV payload, channels still interleaved, samples scaled to
/// [-1, 1] (PCM16 divided by 32768, float kept as stored).
struct WavContent {
  std::vector<double> samples;
  int channel_count = 0;
  int sample_rate = 0;

  std::size_t frame_count() const {
    return channel_count > 0 ? samples.size() / channel_count : 0;
  }
};

/// Reads a RIFF/WAVE file. Supported encodings: PCM 16-bit and IEEE
/// float 32-bit (plus either wrapped in WAVE_FORMAT_EXTENSIBLE). Throws
/// Error(decode_error) for files that are not valid WAV, and
/// Error(unsupported_format) for valid WAV in any other encoding.
WavContent read_wav(const std::filesystem::path& path);

/// Writes mono or interleaved samples as PCM 16-bit, clamping to
/// [-1, 1) and rounding to nearest.
void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const double> interleaved, int sample_rate,
                     int channel_count = 1);

/// Writes samples as IEEE float 32-bit.
void write_wav_float32(const std::filesystem::path& path,
                       std::span<const double> interleaved, int sample_rate,
                       int channel_count = 1);

}  // namespace aqp
