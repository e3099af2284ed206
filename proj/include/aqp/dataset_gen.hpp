#pragma once

#include <cstdint>
#include <filesystem>

namespace aqp {

struct CorpusSummary {
  std::size_t reference_count = 0;
  std::size_t row_count = 0;
  std::filesystem::path csv_path;
};

/// Synthesizes the desk-scale evaluation corpus into `dir`: four burst
/// references (two harmonic glides, two shaped-noise signals), each with
/// a clean copy, additive white noise at 30/20/10/0 dB SNR, and a 50 ms
/// time shift. Audio lands under dir/wav as PCM16, the row listing in
/// dir/dataset.csv with columns ref,deg,codec,mos. Fully determined by
/// the seed.
CorpusSummary generate_corpus(const std::filesystem::path& dir,
                              std::uint64_t seed = 20216);

}  // namespace aqp
