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

// Random generators and independent reference implementations ("oracles")
// shared by the unit and acceptance suites. Oracles here must not call the
// library code path they check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "fastaug/core.hpp"

namespace fastaug::testing {

inline ImageBuffer random_image(RngStream& rng, int h, int w, int channels = 3) {
  ImageBuffer img(h, w, channels);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return img;
}

inline MaskBuffer random_mask(RngStream& rng, int h, int w, int labels = 5) {
  MaskBuffer m(h, w);
  for (auto& v : m.data()) v = static_cast<std::uint8_t>(rng.uniform_int(static_cast<std::uint64_t>(labels)));
  return m;
}

inline BoundingBox random_box(RngStream& rng, std::int64_t label = 0) {
  for (;;) {
    double a = rng.uniform_f64(), b = rng.uniform_f64(), c = rng.uniform_f64(), d = rng.uniform_f64();
    BoundingBox bx{std::min(a, b), std::min(c, d), std::max(a, b), std::max(c, d), label};
    if (bx.valid() && bx.x_max - bx.x_min > 1e-3 && bx.y_max - bx.y_min > 1e-3) return bx;
  }
}

inline SampleBundle random_bundle(RngStream& rng, int h, int w, int masks = 1, int boxes = 2, int channels = 3) {
  SampleBundle b(random_image(rng, h, w, channels));
  for (int i = 0; i < masks; ++i) b.masks.push_back(random_mask(rng, h, w));
  for (int i = 0; i < boxes; ++i) b.boxes.push_back(random_box(rng, i));
  return b;
}

/// Random image whose channel 0 equals the returned mask.
inline SampleBundle mask_mirrored_bundle(RngStream& rng, int h, int w) {
  SampleBundle b(random_image(rng, h, w, 3));
  MaskBuffer m(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.at(y, x) = b.image.at(y, x, 0);
  b.masks.push_back(std::move(m));
  return b;
}

inline bool channel0_equals_mask(const SampleBundle& b, std::size_t mask_index = 0) {
  const auto& m = b.masks.at(mask_index);
  if (m.height() != b.image.height() || m.width() != b.image.width()) return false;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.at(y, x) != b.image.at(y, x, 0)) return false;
  return true;
}

/// Smooth low-frequency test pattern.
inline ImageBuffer smooth_image(int h, int w, double phase = 0.0) {
  ImageBuffer img(h, w, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(y, x, c) = static_cast<std::uint8_t>(
            std::lround(127.5 + 100.0 * std::sin(0.07 * x + 0.05 * y + phase + c) * std::cos(0.04 * y - 0.03 * x)));
  return img;
}

// ---------------------------------------------------------------------------
// Oracles

/// Quarter turn by direct index formula: out[y][x] = in[x][W-1-y].
inline ImageBuffer rot90_oracle(const ImageBuffer& in) {
  ImageBuffer out(in.width(), in.height(), in.channels());
  for (int y = 0; y < in.width(); ++y)
    for (int x = 0; x < in.height(); ++x)
      for (int c = 0; c < in.channels(); ++c) out.at(y, x, c) = in.at(x, in.width() - 1 - y, c);
  return out;
}

/// Forward shift-scale-rotate of a pixel-centre point, derived in y-up math
/// coordinates: scale, rotate counter-clockwise, flip back to y-down, shift.
inline std::array<double, 2> ssr_forward_oracle(double x, double y, int w, int h, double dx, double dy, double scale,
                                                double theta_deg) {
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  const double t = theta_deg * std::numbers::pi / 180.0;
  const double ux = (x - cx) * scale;
  const double uy_up = -(y - cy) * scale;
  const double rx = ux * std::cos(t) - uy_up * std::sin(t);
  const double ry_up = ux * std::sin(t) + uy_up * std::cos(t);
  return {cx + rx + dx * w, cy - ry_up + dy * h};
}

/// Envelope of the four mapped corners, clipped and renormalized.
inline std::optional<BoundingBox> ssr_box_oracle(const BoundingBox& b, int w, int h, double dx, double dy,
                                                 double scale, double theta) {
  const double xs[2] = {b.x_min * w, b.x_max * w};
  const double ys[2] = {b.y_min * h, b.y_max * h};
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (double ex : xs)
    for (double ey : ys) {
      // box edges sit half a pixel outside pixel centres
      auto p = ssr_forward_oracle(ex - 0.5, ey - 0.5, w, h, dx, dy, scale, theta);
      x0 = std::min(x0, p[0] + 0.5);
      x1 = std::max(x1, p[0] + 0.5);
      y0 = std::min(y0, p[1] + 0.5);
      y1 = std::max(y1, p[1] + 0.5);
    }
  x0 = std::clamp(x0, 0.0, double(w));
  x1 = std::clamp(x1, 0.0, double(w));
  y0 = std::clamp(y0, 0.0, double(h));
  y1 = std::clamp(y1, 0.0, double(h));
  if (!(x0 < x1) || !(y0 < y1)) return std::nullopt;
  return BoundingBox{x0 / w, y0 / h, x1 / w, y1 / h, b.label};
}

inline int reflect101_oracle(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

/// Direct 2-D convolution with the outer product of a 1-D kernel.
inline std::vector<double> convolve2d_oracle(const std::vector<double>& plane, int h, int w,
                                             const std::vector<double>& k) {
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> out(plane.size(), 0.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i)
        for (int j = -r; j <= r; ++j)
          acc += k[i + r] * k[j + r] * plane[reflect101_oracle(y + i, h) * w + reflect101_oracle(x + j, w)];
      out[y * w + x] = acc;
    }
  return out;
}

/// 64-bit FNV-1a over every byte of a bundle (image, masks, box fields).
inline std::uint64_t digest(const SampleBundle& b, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto mix = [&h](const void* p, std::size_t n) {
    const auto* s = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= s[i];
      h *= 0x100000001b3ULL;
    }
  };
  const int dims[3] = {b.image.height(), b.image.width(), b.image.channels()};
  mix(dims, sizeof dims);
  mix(b.image.data().data(), b.image.data().size());
  for (const auto& m : b.masks) mix(m.data().data(), m.data().size());
  for (const auto& bx : b.boxes) {
    const double v[4] = {bx.x_min, bx.y_min, bx.x_max, bx.y_max};
    mix(v, sizeof v);
    mix(&bx.label, sizeof bx.label);
  }
  return h;
}

}  // namespace fastaug::testing
