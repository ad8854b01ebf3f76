/**
 * Copyright 2026 The fastaug Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*!
 * \file imgio.hpp
 * \brief Binary PNM (P5 / P6, maxval 255) reader and writer.
 *
 * P6 decodes to a 3-channel ImageBuffer, P5 to a MaskBuffer. The writer
 * always emits "P6\n{w} {h}\n255\n" (or P5) followed by the raw samples.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fastaug/core.hpp"

namespace fastaug::imgio {

class PnmError : public Error {
 public:
  enum class Kind { parse, unsupported, truncated, io };

  PnmError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

struct PnmHeader {
  char magic = '6';  // '5' or '6'
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::size_t payload_offset = 0;

  int channels() const noexcept { return magic == '6' ? 3 : 1; }
};

using PnmImage = std::variant<ImageBuffer, MaskBuffer>;

namespace detail {

inline bool is_space(std::uint8_t c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments up to end of line.
inline void skip_separators(std::span<const std::uint8_t> in, std::size_t& pos) {
  while (pos < in.size()) {
    if (is_space(in[pos])) {
      ++pos;
    } else if (in[pos] == '#') {
      while (pos < in.size() && in[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

inline int read_header_int(std::span<const std::uint8_t> in, std::size_t& pos, const char* field) {
  skip_separators(in, pos);
  if (pos >= in.size())
    throw PnmError(PnmError::Kind::truncated, pos, std::string("header ends before ") + field);
  if (in[pos] < '0' || in[pos] > '9')
    throw PnmError(PnmError::Kind::parse, pos, std::string("expected decimal ") + field);
  long long value = 0;
  while (pos < in.size() && in[pos] >= '0' && in[pos] <= '9') {
    value = value * 10 + (in[pos] - '0');
    if (value > (1LL << 30)) throw PnmError(PnmError::Kind::parse, pos, std::string(field) + " too large");
    ++pos;
  }
  return static_cast<int>(value);
}

}  // namespace detail

inline PnmHeader read_pnm_header(std::span<const std::uint8_t> in) {
  PnmHeader h;
  if (in.size() < 2) throw PnmError(PnmError::Kind::truncated, in.size(), "missing magic number");
  if (in[0] != 'P') throw PnmError(PnmError::Kind::parse, 0, "bad magic number");
  if (in[1] != '5' && in[1] != '6') {
    if (in[1] >= '1' && in[1] <= '7')
      throw PnmError(PnmError::Kind::unsupported, 1, "only binary P5/P6 is supported");
    throw PnmError(PnmError::Kind::parse, 1, "bad magic number");
  }
  h.magic = static_cast<char>(in[1]);
  std::size_t pos = 2;
  if (pos < in.size() && !detail::is_space(in[pos]) && in[pos] != '#')
    throw PnmError(PnmError::Kind::parse, pos, "expected whitespace after magic number");
  h.width = detail::read_header_int(in, pos, "width");
  h.height = detail::read_header_int(in, pos, "height");
  const std::size_t maxval_pos = pos;
  h.maxval = detail::read_header_int(in, pos, "maxval");
  if (h.width < 1 || h.height < 1) throw PnmError(PnmError::Kind::parse, maxval_pos, "zero image dimension");
  if (h.maxval != 255)
    throw PnmError(PnmError::Kind::unsupported, maxval_pos, "maxval " + std::to_string(h.maxval) + " is not 255");
  if (pos >= in.size()) throw PnmError(PnmError::Kind::truncated, pos, "missing separator before payload");
  if (!detail::is_space(in[pos])) throw PnmError(PnmError::Kind::parse, pos, "expected single whitespace after maxval");
  h.payload_offset = pos + 1;
  return h;
}

inline PnmImage read_pnm(std::span<const std::uint8_t> in) {
  const PnmHeader h = read_pnm_header(in);
  const std::size_t n = static_cast<std::size_t>(h.width) * h.height * h.channels();
  if (in.size() - h.payload_offset < n)
    throw PnmError(PnmError::Kind::truncated, in.size(),
                   "payload has " + std::to_string(in.size() - h.payload_offset) + " of " + std::to_string(n) +
                       " bytes");
  std::vector<std::uint8_t> data(in.begin() + static_cast<std::ptrdiff_t>(h.payload_offset),
                                 in.begin() + static_cast<std::ptrdiff_t>(h.payload_offset + n));
  if (h.magic == '6') return ImageBuffer(h.height, h.width, 3, std::move(data));
  return MaskBuffer(h.height, h.width, std::move(data));
}

namespace detail {

inline std::vector<std::uint8_t> encode(char magic, int w, int h, std::span<const std::uint8_t> samples) {
  const std::string header = std::string("P") + magic + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + samples.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), samples.begin(), samples.end());
  return out;
}

}  // namespace detail

/// 3-channel images are written as P6, 1-channel images as P5.
inline std::vector<std::uint8_t> write_pnm(const ImageBuffer& img) {
  return detail::encode(img.channels() == 3 ? '6' : '5', img.width(), img.height(), img.data());
}

inline std::vector<std::uint8_t> write_pnm(const MaskBuffer& mask) {
  return detail::encode('5', mask.width(), mask.height(), mask.data());
}

inline std::vector<std::uint8_t> write_pnm(const PnmImage& img) {
  return std::visit([](const auto& b) { return write_pnm(b); }, img);
}

// ---------------------------------------------------------------------------
// File helpers

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PnmError(PnmError::Kind::io, 0, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw PnmError(PnmError::Kind::io, 0, "cannot create " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw PnmError(PnmError::Kind::io, 0, "write failed for " + path.string());
}

inline PnmImage load_pnm(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return read_pnm(bytes);
}

/// Loads any P5/P6 file as an ImageBuffer (P5 becomes a 1-channel image).
inline ImageBuffer load_image(const std::filesystem::path& path) {
  auto img = load_pnm(path);
  if (auto* m = std::get_if<MaskBuffer>(&img)) {
    std::vector<std::uint8_t> data(m->data().begin(), m->data().end());
    return ImageBuffer(m->height(), m->width(), 1, std::move(data));
  }
  return std::get<ImageBuffer>(std::move(img));
}

template <typename Buffer>
void save_pnm(const std::filesystem::path& path, const Buffer& buf) {
  write_file(path, write_pnm(buf));
}

}  // namespace fastaug::imgio
