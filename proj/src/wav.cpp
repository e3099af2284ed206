#include "aqp/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "aqp/error.hpp"

namespace aqp {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void fail_decode(const std::filesystem::path& path,
                              const std::string& why) {
  throw Error(errc::decode_error, path.generic_string() + ": " + why);
}

struct Reader {
  const std::vector<std::uint8_t>& bytes;
  const std::filesystem::path& path;
  std::size_t pos = 0;

  bool at_end() const { return pos >= bytes.size(); }
  std::size_t remaining() const { return bytes.size() - pos; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n)
      fail_decode(path, std::string("truncated ") + what);
  }

  std::uint16_t u16() {
    need(2, "field");
    std::uint16_t v = static_cast<std::uint16_t>(bytes[pos]) |
                      static_cast<std::uint16_t>(bytes[pos + 1]) << 8;
    pos += 2;
    return v;
  }

  std::uint32_t u32() {
    need(4, "field");
    std::uint32_t v = static_cast<std::uint32_t>(bytes[pos]) |
                      static_cast<std::uint32_t>(bytes[pos + 1]) << 8 |
                      static_cast<std::uint32_t>(bytes[pos + 2]) << 16 |
                      static_cast<std::uint32_t>(bytes[pos + 3]) << 24;
    pos += 4;
    return v;
  }

  std::string tag() {
    need(4, "chunk tag");
    std::string v(reinterpret_cast<const char*>(bytes.data() + pos), 4);
    pos += 4;
    return v;
  }
};

void append_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(errc::io_error,
                "cannot open '" + path.generic_string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(errc::io_error, "write failed for '" + path.generic_string() +
                                    "'");
}

std::string wav_header(std::uint16_t format_tag, std::uint16_t bits,
                       int sample_rate, int channel_count,
                       std::size_t frame_count, std::size_t data_bytes) {
  const std::uint16_t block_align =
      static_cast<std::uint16_t>(channel_count * bits / 8);
  const bool with_fact = format_tag != kFormatPcm;
  const std::uint32_t riff_size = 4 + (8 + 16) + (with_fact ? 8 + 4 : 0) +
                                  (8 + static_cast<std::uint32_t>(data_bytes));
  std::string out;
  out += "RIFF";
  append_u32(out, riff_size);
  out += "WAVE";
  out += "fmt ";
  append_u32(out, 16);
  append_u16(out, format_tag);
  append_u16(out, static_cast<std::uint16_t>(channel_count));
  append_u32(out, static_cast<std::uint32_t>(sample_rate));
  append_u32(out, static_cast<std::uint32_t>(sample_rate) * block_align);
  append_u16(out, block_align);
  append_u16(out, bits);
  if (with_fact) {
    out += "fact";
    append_u32(out, 4);
    append_u32(out, static_cast<std::uint32_t>(frame_count));
  }
  out += "data";
  append_u32(out, static_cast<std::uint32_t>(data_bytes));
  return out;
}

}  // namespace

WavContent read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(errc::file_not_found,
                "cannot open '" + path.generic_string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());

  Reader r{bytes, path};
  if (r.remaining() < 12 || r.tag() != "RIFF")
    fail_decode(path, "not a RIFF file");
  r.u32();  // riff size; files in the wild lie here, so it is ignored
  if (r.tag() != "WAVE") fail_decode(path, "not a WAVE file");

  bool have_fmt = false;
  std::uint16_t format_tag = 0;
  std::uint16_t bits = 0;
  int channel_count = 0;
  int sample_rate = 0;
  std::size_t data_begin = 0;
  std::size_t data_size = 0;
  bool have_data = false;

  while (!r.at_end()) {
    if (r.remaining() < 8) break;  // trailing junk
    std::string chunk = r.tag();
    std::uint32_t size = r.u32();
    if (chunk == "fmt ") {
      if (size < 16) fail_decode(path, "fmt chunk too small");
      std::size_t chunk_end = r.pos + size;
      format_tag = r.u16();
      channel_count = r.u16();
      sample_rate = static_cast<int>(r.u32());
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      if (format_tag == kFormatExtensible) {
        if (size < 40) fail_decode(path, "extensible fmt chunk too small");
        r.u16();  // extension size
        r.u16();  // valid bits
        r.u32();  // channel mask
        format_tag = r.u16();  // first two bytes of the subformat GUID
      }
      r.pos = chunk_end;
      have_fmt = true;
    } else if (chunk == "data") {
      r.need(size, "data chunk");
      data_begin = r.pos;
      data_size = size;
      have_data = true;
      r.pos += size;
    } else {
      r.need(size, "chunk");
      r.pos += size;
    }
    if (r.pos % 2 == 1 && !r.at_end()) ++r.pos;  // chunks are word-aligned
  }

  if (!have_fmt) fail_decode(path, "missing fmt chunk");
  if (!have_data) fail_decode(path, "missing data chunk");
  if (channel_count <= 0) fail_decode(path, "channel count is zero");
  if (sample_rate <= 0) fail_decode(path, "sample rate is zero");

  const bool pcm16 = format_tag == kFormatPcm && bits == 16;
  const bool float32 = format_tag == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw Error(errc::unsupported_format,
                path.generic_string() + ": format tag " +
                    std::to_string(format_tag) + " with " +
                    std::to_string(bits) +
                    " bits per sample (supported: PCM16, float32)");

  WavContent content;
  content.channel_count = channel_count;
  content.sample_rate = sample_rate;

  if (pcm16) {
    std::size_t count = data_size / 2;
    content.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint16_t raw = static_cast<std::uint16_t>(bytes[data_begin + 2 * i]) |
                          static_cast<std::uint16_t>(
                              bytes[data_begin + 2 * i + 1])
                              << 8;
      content.samples[i] =
          static_cast<double>(static_cast<std::int16_t>(raw)) / 32768.0;
    }
  } else {
    std::size_t count = data_size / 4;
    content.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t raw = 0;
      std::memcpy(&raw, bytes.data() + data_begin + 4 * i, 4);
      float value = 0.0F;
      std::memcpy(&value, &raw, 4);
      content.samples[i] = static_cast<double>(value);
    }
  }
  return content;
}

void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const double> interleaved, int sample_rate,
                     int channel_count) {
  std::string out =
      wav_header(kFormatPcm, 16, sample_rate, channel_count,
                 interleaved.size() / static_cast<std::size_t>(channel_count),
                 interleaved.size() * 2);
  for (double sample : interleaved) {
    double scaled = std::round(sample * 32768.0);
    scaled = std::clamp(scaled, -32768.0, 32767.0);
    append_u16(out, static_cast<std::uint16_t>(
                        static_cast<std::int16_t>(scaled)));
  }
  write_file(path, out);
}

void write_wav_float32(const std::filesystem::path& path,
                       std::span<const double> interleaved, int sample_rate,
                       int channel_count) {
  std::string out =
      wav_header(kFormatFloat, 32, sample_rate, channel_count,
                 interleaved.size() / static_cast<std::size_t>(channel_count),
                 interleaved.size() * 4);
  for (double sample : interleaved) {
    float value = static_cast<float>(sample);
    std::uint32_t raw = 0;
    std::memcpy(&raw, &value, 4);
    append_u32(out, raw);
  }
  write_file(path, out);
}

}  // namespace aqp
