// Copyright 2026 The hogbatch-w2v Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "w2v/model.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace w2v {

namespace {

float to_little_endian(float v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto bits = std::bit_cast<std::uint32_t>(v);
    bits = (bits >> 24) | ((bits >> 8) & 0xFF00u) | ((bits << 8) & 0xFF0000u) | (bits << 24);
    return std::bit_cast<float>(bits);
  }
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool parse_float(std::string_view s, float& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

/// Parses `token v1 .. vD` into `row`; false if the line is not such a record.
bool parse_text_record(std::string_view line, std::size_t dim, std::string& token, std::span<float> row,
                       std::size_t* fields_seen = nullptr) {
  auto fields = split_fields(line);
  if (fields_seen) *fields_seen = fields.size();
  if (fields.size() != dim + 1) return false;
  token.assign(fields[0]);
  for (std::size_t d = 0; d < dim; ++d) {
    if (!parse_float(fields[d + 1], row[d])) return false;
  }
  return true;
}

}  // namespace

void save_vectors(const Matrix<float>& vectors, std::span<const std::string> tokens,
                  const std::filesystem::path& path, bool binary) {
  if (vectors.rows() != tokens.size()) throw ConfigError("token count and vector count differ");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing", 0);
  out << vectors.rows() << ' ' << vectors.cols() << '\n';
  std::vector<float> le(vectors.cols());
  fmt::memory_buffer line;
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    const auto row = vectors.row(r);
    if (binary) {
      std::transform(row.begin(), row.end(), le.begin(), to_little_endian);
      out << tokens[r] << ' ';
      out.write(reinterpret_cast<const char*>(le.data()), static_cast<std::streamsize>(le.size() * sizeof(float)));
      out << '\n';
    } else {
      line.clear();
      fmt::format_to(std::back_inserter(line), "{}", tokens[r]);
      for (float v : row) fmt::format_to(std::back_inserter(line), " {:.6g}", v);
      line.push_back('\n');
      out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
  }
  if (!out) throw IoError("failed writing " + path.string(), static_cast<std::uint64_t>(out.tellp()));
}

WordVectors load_vectors(const std::filesystem::path& path, VectorFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string(), 0);

  std::string header;
  if (!std::getline(in, header)) throw FormatError("missing header", 0);
  std::size_t rows = 0, cols = 0;
  {
    auto fields = split_fields(header);
    auto parse_size = [](std::string_view s, std::size_t& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && ptr == s.data() + s.size();
    };
    if (fields.size() != 2 || !parse_size(fields[0], rows) || !parse_size(fields[1], cols) || cols == 0) {
      throw FormatError("malformed header '" + header + "', expected 'V D'", 0);
    }
  }
  std::uint64_t offset = header.size() + 1;

  WordVectors result;
  result.tokens.reserve(rows);
  result.vectors = Matrix<float>(rows, cols);

  if (format == VectorFormat::automatic) {
    format = VectorFormat::binary;
    std::string first;
    const auto pos = in.tellg();
    if (rows > 0 && std::getline(in, first)) {
      std::string token;
      std::vector<float> scratch(cols);
      if (parse_text_record(first, cols, token, scratch)) format = VectorFormat::text;
    }
    in.clear();
    in.seekg(pos);
  }

  if (format == VectorFormat::text) {
    std::string line;
    std::string token;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!std::getline(in, line)) {
        throw FormatError(fmt::format("truncated file: {} of {} records present", r, rows), offset);
      }
      std::size_t fields = 0;
      if (!parse_text_record(line, cols, token, result.vectors.row(r), &fields)) {
        if (fields != cols + 1) {
          throw FormatError(fmt::format("record {} has {} values, header says {}", r,
                                        fields == 0 ? 0 : fields - 1, cols),
                            offset);
        }
        throw FormatError(fmt::format("record {} has a malformed value", r), offset);
      }
      result.tokens.push_back(token);
      offset += line.size() + 1;
    }
    return result;
  }

  const std::size_t record_bytes = cols * sizeof(float);
  for (std::size_t r = 0; r < rows; ++r) {
    std::string token;
    int c;
    while ((c = in.get()) != EOF && is_blank(static_cast<char>(c))) ++offset;
    while (c != EOF && c != ' ') {
      token.push_back(static_cast<char>(c));
      c = in.get();
    }
    if (c == EOF) {
      throw FormatError(fmt::format("truncated file: {} of {} records present", r, rows), offset);
    }
    offset += token.size() + 1;
    auto row = result.vectors.row(r);
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(record_bytes));
    if (static_cast<std::size_t>(in.gcount()) != record_bytes) {
      throw FormatError(fmt::format("truncated record {} ('{}'): {} of {} bytes", r, token, in.gcount(),
                                    record_bytes),
                        offset);
    }
    offset += record_bytes;
    std::transform(row.begin(), row.end(), row.begin(), to_little_endian);
    result.tokens.push_back(std::move(token));
  }
  return result;
}

}  // namespace w2v
