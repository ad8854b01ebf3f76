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
 * \file core.hpp
 * \brief Shared data model: pixel buffers, label masks, normalized boxes,
 *        sample bundles and the seeded random stream.
 *
 * Coordinates: x is the column index in [0, width), y the row index in
 * [0, height), origin top-left, y grows downward. Samples are stored
 * row-major, channels interleaved (RGB when 3 channels).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fastaug {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument for a transform (bad window, negative factor, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The transform cannot act on this kind of target (1-channel input to a
/// color op, boxes under a free-form warp).
class UnsupportedTargetError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Pixel helpers

/// Round-half-up then clip to [0, 255].
inline std::uint8_t clip_round(double v) noexcept {
  const double r = std::floor(v + 0.5);
  if (!(r > 0.0)) return 0;  // also catches NaN
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

// ---------------------------------------------------------------------------
// Buffers

class ImageBuffer {
 public:
  ImageBuffer() = default;

  ImageBuffer(int height, int width, int channels, std::uint8_t value = 0)
      : height_(height), width_(width), channels_(channels) {
    check_shape(height, width, channels);
    data_.assign(static_cast<std::size_t>(height) * width * channels, value);
  }

  ImageBuffer(int height, int width, int channels, std::vector<std::uint8_t> data)
      : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
    check_shape(height, width, channels);
    if (data_.size() != static_cast<std::size_t>(height) * width * channels)
      throw ParameterError("image data length does not match height*width*channels");
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t row_stride() const noexcept { return static_cast<std::size_t>(width_) * channels_; }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t* row(int y) noexcept { return data_.data() + y * row_stride(); }
  const std::uint8_t* row(int y) const noexcept { return data_.data() + y * row_stride(); }

  std::uint8_t& at(int y, int x, int c = 0) noexcept {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t at(int y, int x, int c = 0) const noexcept {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  static void check_shape(int height, int width, int channels) {
    if (height < 1 || width < 1) throw ParameterError("image dimensions must be >= 1");
    if (channels != 1 && channels != 3) throw ParameterError("image must have 1 or 3 channels");
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Single-plane 8-bit label image.
class MaskBuffer {
 public:
  MaskBuffer() = default;

  MaskBuffer(int height, int width, std::uint8_t value = 0) : height_(height), width_(width) {
    if (height < 1 || width < 1) throw ParameterError("mask dimensions must be >= 1");
    data_.assign(static_cast<std::size_t>(height) * width, value);
  }

  MaskBuffer(int height, int width, std::vector<std::uint8_t> data)
      : height_(height), width_(width), data_(std::move(data)) {
    if (height < 1 || width < 1) throw ParameterError("mask dimensions must be >= 1");
    if (data_.size() != static_cast<std::size_t>(height) * width)
      throw ParameterError("mask data length does not match height*width");
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  static constexpr int channels() noexcept { return 1; }
  std::size_t row_stride() const noexcept { return static_cast<std::size_t>(width_); }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t* row(int y) noexcept { return data_.data() + y * row_stride(); }
  const std::uint8_t* row(int y) const noexcept { return data_.data() + y * row_stride(); }

  std::uint8_t& at(int y, int x) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t at(int y, int x) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  friend bool operator==(const MaskBuffer&, const MaskBuffer&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Axis-aligned box in coordinates normalized by image width/height.
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  std::int64_t label = 0;

  bool valid() const noexcept {
    return 0.0 <= x_min && x_min < x_max && x_max <= 1.0 &&
           0.0 <= y_min && y_min < y_max && y_max <= 1.0;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Box corners in pixel units (edge coordinates: the full image is [0,W]x[0,H]).
struct PixelBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
};

inline PixelBox box_denormalize(const BoundingBox& b, int w, int h) noexcept {
  return {b.x_min * w, b.y_min * h, b.x_max * w, b.y_max * h};
}

inline BoundingBox box_normalize(const PixelBox& p, int w, int h, std::int64_t label = 0) noexcept {
  return {p.x_min / w, p.y_min / h, p.x_max / w, p.y_max / h, label};
}

/// Image plus co-registered targets. Every mask matches the image size.
struct SampleBundle {
  ImageBuffer image;
  std::vector<MaskBuffer> masks;
  std::vector<BoundingBox> boxes;

  SampleBundle() = default;
  explicit SampleBundle(ImageBuffer img, std::vector<MaskBuffer> m = {}, std::vector<BoundingBox> b = {})
      : image(std::move(img)), masks(std::move(m)), boxes(std::move(b)) {}

  friend bool operator==(const SampleBundle&, const SampleBundle&) = default;
};

/// Returns one message per violated bundle invariant; empty means ok.
inline std::vector<std::string> validate_bundle(const SampleBundle& b) {
  std::vector<std::string> report;
  const auto& img = b.image;
  if (img.height() < 1 || img.width() < 1 || (img.channels() != 1 && img.channels() != 3) ||
      img.data().size() != static_cast<std::size_t>(img.height()) * img.width() * img.channels())
    report.emplace_back("invalid image buffer");
  for (std::size_t i = 0; i < b.masks.size(); ++i) {
    const auto& m = b.masks[i];
    if (m.height() != img.height() || m.width() != img.width())
      report.push_back("mask shape mismatch (mask " + std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < b.boxes.size(); ++i) {
    const auto& bx = b.boxes[i];
    if (!(bx.x_min < bx.x_max) || !(bx.y_min < bx.y_max))
      report.push_back("degenerate box (box " + std::to_string(i) + ")");
    else if (!bx.valid())
      report.push_back("box out of range (box " + std::to_string(i) + ")");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Random numbers

/// SplitMix64 stream. Single owner; copy it to fork an identical sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// [0, 1) with 53 random bits.
  double uniform_f64() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// [0, n); n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(uniform_f64() * static_cast<double>(n));
  }

  /// lo + (hi - lo) * u, one draw. Returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform_f64(); }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace fastaug
