#include "aqp/audio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aqp/error.hpp"
#include "aqp/resample.hpp"
#include "aqp/wav.hpp"

namespace aqp {
namespace {

/// Minimal csv reader: comma separated, double quotes with "" escapes,
/// newlines allowed inside quoted fields. Returns rows of fields; rows
/// that are entirely empty are dropped.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    bool empty_row = row.size() == 1 && row[0].empty();
    if (!empty_row) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      end_row();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    end_row();
  }
  return rows;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name,
                        const std::filesystem::path& csv_path) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error(errc::missing_column, csv_path.generic_string() +
                                        ": header has no column '" + name +
                                        "'");
}

double parse_mos(const std::string& raw, std::size_t row_number) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size())
    throw Error(errc::bad_mos, "row " + std::to_string(row_number) +
                                   ": mos '" + raw + "' is not a number");
  if (!(value >= 1.0 && value <= 5.0))
    throw Error(errc::bad_mos, "row " + std::to_string(row_number) +
                                   ": mos " + raw + " outside [1, 5]");
  return value;
}

std::string resolve_against(const std::filesystem::path& dir,
                            const std::string& raw) {
  std::filesystem::path p(raw);
  if (p.is_absolute()) return p.generic_string();
  return (dir / p).generic_string();
}

}  // namespace

Signal load_audio(const std::filesystem::path& path, int target_rate) {
  WavContent content = read_wav(path);

  Signal signal;
  signal.sample_rate = content.sample_rate;
  const std::size_t frames = content.frame_count();
  signal.samples.resize(frames);
  if (content.channel_count == 1) {
    signal.samples = std::move(content.samples);
  } else {
    for (std::size_t f = 0; f < frames; ++f) {
      double acc = 0.0;
      for (int c = 0; c < content.channel_count; ++c)
        acc += content.samples[f * content.channel_count +
                               static_cast<std::size_t>(c)];
      signal.samples[f] = acc / content.channel_count;
    }
  }

  for (double s : signal.samples)
    if (!std::isfinite(s))
      throw Error(errc::decode_error,
                  path.generic_string() + ": non-finite sample");

  if (target_rate > 0 && signal.sample_rate != target_rate) {
    signal.samples = resample(signal.samples, signal.sample_rate, target_rate);
    signal.sample_rate = target_rate;
  }
  return signal;
}

DatasetTable load_dataset(const std::filesystem::path& csv_path,
                          const DatasetColumns& columns) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in)
    throw Error(errc::file_not_found,
                "cannot open '" + csv_path.generic_string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::vector<std::string>> rows = parse_csv(buffer.str());

  if (rows.empty())
    throw Error(errc::empty_dataset,
                csv_path.generic_string() + ": no header row");

  const std::vector<std::string>& header = rows.front();
  const std::size_t ref_col = find_column(header, columns.ref, csv_path);
  const std::size_t deg_col = find_column(header, columns.deg, csv_path);
  const std::size_t codec_col = find_column(header, columns.codec, csv_path);
  const std::size_t mos_col = find_column(header, columns.mos, csv_path);

  const std::filesystem::path dir = csv_path.parent_path();
  DatasetTable table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::vector<std::string>& fields = rows[r];
    const std::size_t needed =
        std::max({ref_col, deg_col, codec_col, mos_col}) + 1;
    if (fields.size() < needed)
      throw Error(errc::invalid_field,
                  csv_path.generic_string() + ": row " + std::to_string(r) +
                      " has " + std::to_string(fields.size()) +
                      " fields, needs at least " + std::to_string(needed));
    DatasetRow row;
    row.ref_path = fields[ref_col];
    row.deg_path = fields[deg_col];
    row.codec = fields[codec_col];
    row.mos = parse_mos(fields[mos_col], r);
    row.ref_resolved = resolve_against(dir, row.ref_path);
    row.deg_resolved = resolve_against(dir, row.deg_path);
    table.rows().push_back(std::move(row));
  }

  if (table.rows().empty())
    throw Error(errc::empty_dataset,
                csv_path.generic_string() + ": no data rows");
  return table;
}

}  // namespace aqp
