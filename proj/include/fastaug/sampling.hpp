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
 * \file sampling.hpp
 * \brief Gather-resampling engine shared by the affine and free-form warps.
 *
 * Every output pixel asks a coordinate function for its real-valued source
 * location and reads the source there. Out-of-range reads follow the
 * BorderPolicy.
 */
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <utility>

#include "fastaug/core.hpp"

namespace fastaug {

enum class Interpolation { nearest, bilinear };

enum class BorderMode { constant, reflect101 };

struct BorderPolicy {
  BorderMode mode = BorderMode::constant;
  std::array<std::uint8_t, 3> fill{0, 0, 0};  // per channel; 1-channel images use fill[0]
  std::uint8_t mask_fill = 0;

  friend bool operator==(const BorderPolicy&, const BorderPolicy&) = default;
};

/// Mirror index about the edge sample without repeating it: -1 -> 1, n -> n-2.
inline int reflect101(long long i, int n) noexcept {
  if (n == 1) return 0;
  const long long period = 2LL * (n - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return static_cast<int>(i);
}

namespace detail {

struct Point {
  double x;
  double y;
};

// Keeps far out-of-range coordinates (and their integer casts) bounded.
inline double clamp_coord(double v) noexcept {
  constexpr double kLimit = 1e8;
  return v < -kLimit ? -kLimit : (v > kLimit ? kLimit : v);
}

inline long long fast_floor(double v) noexcept {
  auto i = static_cast<long long>(v);
  return (static_cast<double>(i) > v) ? i - 1 : i;
}

/// Nearest neighbour: index = floor(v + 0.5).
template <int C, typename CoordFn>
void resample_nearest(const std::uint8_t* src, int sh, int sw, std::uint8_t* dst, int dh, int dw, CoordFn&& coord,
                      BorderMode mode, const std::uint8_t* fill) {
  for (int y = 0; y < dh; ++y) {
    std::uint8_t* out = dst + static_cast<std::size_t>(y) * dw * C;
    for (int x = 0; x < dw; ++x, out += C) {
      const Point p = coord(x, y);
      long long ix = fast_floor(clamp_coord(p.x) + 0.5);
      long long iy = fast_floor(clamp_coord(p.y) + 0.5);
      const std::uint8_t* s;
      if (ix >= 0 && ix < sw && iy >= 0 && iy < sh) {
        s = src + (static_cast<std::size_t>(iy) * sw + static_cast<std::size_t>(ix)) * C;
      } else if (mode == BorderMode::constant) {
        s = fill;
      } else {
        s = src + (static_cast<std::size_t>(reflect101(iy, sh)) * sw + reflect101(ix, sw)) * C;
      }
      for (int c = 0; c < C; ++c) out[c] = s[c];
    }
  }
}

template <int C, typename CoordFn>
void resample_bilinear(const std::uint8_t* src, int sh, int sw, std::uint8_t* dst, int dh, int dw, CoordFn&& coord,
                       BorderMode mode, const std::uint8_t* fill) {
  const auto tap = [&](long long iy, long long ix) -> const std::uint8_t* {
    if (ix >= 0 && ix < sw && iy >= 0 && iy < sh)
      return src + (static_cast<std::size_t>(iy) * sw + static_cast<std::size_t>(ix)) * C;
    if (mode == BorderMode::constant) return fill;
    return src + (static_cast<std::size_t>(reflect101(iy, sh)) * sw + reflect101(ix, sw)) * C;
  };

  for (int y = 0; y < dh; ++y) {
    std::uint8_t* out = dst + static_cast<std::size_t>(y) * dw * C;
    for (int x = 0; x < dw; ++x, out += C) {
      const Point p = coord(x, y);
      const double xs = clamp_coord(p.x);
      const double ys = clamp_coord(p.y);
      const long long x0 = fast_floor(xs);
      const long long y0 = fast_floor(ys);
      const double fx = xs - static_cast<double>(x0);
      const double fy = ys - static_cast<double>(y0);
      const double w00 = (1.0 - fx) * (1.0 - fy);
      const double w01 = fx * (1.0 - fy);
      const double w10 = (1.0 - fx) * fy;
      const double w11 = fx * fy;

      const std::uint8_t *p00, *p01, *p10, *p11;
      if (x0 >= 0 && x0 + 1 < sw && y0 >= 0 && y0 + 1 < sh) {
        p00 = src + (static_cast<std::size_t>(y0) * sw + static_cast<std::size_t>(x0)) * C;
        p01 = p00 + C;
        p10 = p00 + static_cast<std::size_t>(sw) * C;
        p11 = p10 + C;
      } else {
        if (mode == BorderMode::constant && (x0 + 1 < 0 || x0 >= sw || y0 + 1 < 0 || y0 >= sh)) {
          for (int c = 0; c < C; ++c) out[c] = fill[c];
          continue;
        }
        p00 = tap(y0, x0);
        p01 = tap(y0, x0 + 1);
        p10 = tap(y0 + 1, x0);
        p11 = tap(y0 + 1, x0 + 1);
      }
      for (int c = 0; c < C; ++c)
        out[c] = clip_round(w00 * p00[c] + w01 * p01[c] + w10 * p10[c] + w11 * p11[c]);
    }
  }
}

/// Dispatches on channel count and interpolation. `fill` must hold `channels` samples.
template <typename CoordFn>
void resample(const std::uint8_t* src, int sh, int sw, int channels, std::uint8_t* dst, int dh, int dw,
              CoordFn&& coord, Interpolation interp, BorderMode mode, const std::uint8_t* fill) {
  if (interp == Interpolation::nearest) {
    if (channels == 3)
      resample_nearest<3>(src, sh, sw, dst, dh, dw, coord, mode, fill);
    else
      resample_nearest<1>(src, sh, sw, dst, dh, dw, coord, mode, fill);
  } else {
    if (channels == 3)
      resample_bilinear<3>(src, sh, sw, dst, dh, dw, coord, mode, fill);
    else
      resample_bilinear<1>(src, sh, sw, dst, dh, dw, coord, mode, fill);
  }
}

}  // namespace detail

/// Output of the same kind as `like`, with the given size.
inline ImageBuffer make_like(const ImageBuffer& like, int height, int width) {
  return ImageBuffer(height, width, like.channels());
}
inline MaskBuffer make_like(const MaskBuffer&, int height, int width) { return MaskBuffer(height, width); }

/// Resamples `src` into a new height x width buffer. Masks are always sampled
/// nearest and filled with the policy's mask label.
template <typename CoordFn>
ImageBuffer warp_with(const ImageBuffer& src, int height, int width, CoordFn&& coord, Interpolation interp,
                      const BorderPolicy& border) {
  ImageBuffer out = make_like(src, height, width);
  detail::resample(src.data().data(), src.height(), src.width(), src.channels(), out.data().data(), height, width,
                   coord, interp, border.mode, border.fill.data());
  return out;
}

template <typename CoordFn>
MaskBuffer warp_with(const MaskBuffer& src, int height, int width, CoordFn&& coord, Interpolation /*ignored*/,
                     const BorderPolicy& border) {
  MaskBuffer out = make_like(src, height, width);
  detail::resample(src.data().data(), src.height(), src.width(), 1, out.data().data(), height, width, coord,
                   Interpolation::nearest, border.mode, &border.mask_fill);
  return out;
}

}  // namespace fastaug
