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
 * \file photo.hpp
 * \brief Photometric transforms. They touch pixel values only; the bundle
 *        overload passes masks and boxes through unchanged.
 *
 * Per-sample ops (brightness, contrast, gamma, RGB shift) go through a
 * 256-entry table, which is exact because the output depends on one input
 * sample. HSV shifting is evaluated per pixel in double precision.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "fastaug/core.hpp"

namespace fastaug {

using Lut = std::array<std::uint8_t, 256>;

template <typename Fn>
Lut make_lut(Fn&& fn) {
  Lut lut{};
  for (int v = 0; v < 256; ++v) lut[v] = fn(static_cast<double>(v));
  return lut;
}

inline ImageBuffer apply_lut(const ImageBuffer& img, const Lut& lut) {
  ImageBuffer out(img.height(), img.width(), img.channels());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

/// One table per channel (R, G, B).
inline ImageBuffer apply_lut3(const ImageBuffer& img, const std::array<Lut, 3>& luts) {
  ImageBuffer out(img.height(), img.width(), img.channels());
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    dst[i] = luts[0][src[i]];
    dst[i + 1] = luts[1][src[i + 1]];
    dst[i + 2] = luts[2][src[i + 2]];
  }
  return out;
}

namespace detail {

inline void require_rgb(const ImageBuffer& img, const char* op) {
  if (img.channels() != 3) throw UnsupportedTargetError(std::string(op) + ": requires a 3-channel RGB image");
}

}  // namespace detail

/// out = clip_round(in * beta)
inline ImageBuffer brightness(const ImageBuffer& img, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("brightness: beta must be >= 0");
  return apply_lut(img, make_lut([beta](double v) { return clip_round(v * beta); }));
}

/// out = clip_round(127.5 + (in - 127.5) * c)
inline ImageBuffer contrast(const ImageBuffer& img, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("contrast: factor must be >= 0");
  return apply_lut(img, make_lut([c](double v) { return clip_round(127.5 + (v - 127.5) * c); }));
}

inline std::uint8_t gamma_sample(double v, double g) noexcept { return clip_round(255.0 * std::pow(v / 255.0, g)); }

inline Lut gamma_lut(double g) {
  if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("gamma: exponent must be > 0");
  return make_lut([g](double v) { return gamma_sample(v, g); });
}

/// out = clip_round(255 * (in / 255)^g)
inline ImageBuffer gamma(const ImageBuffer& img, double g) { return apply_lut(img, gamma_lut(g)); }

inline ImageBuffer shift_rgb(const ImageBuffer& img, double dr, double dg, double db) {
  detail::require_rgb(img, "shift_rgb");
  std::array<Lut, 3> luts{};
  const std::array<double, 3> deltas{dr, dg, db};
  for (int c = 0; c < 3; ++c) luts[c] = make_lut([d = deltas[c]](double v) { return clip_round(v + d); });
  return apply_lut3(img, luts);
}

// ---------------------------------------------------------------------------
// HSV

struct HsvPixel {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

struct RgbPixel {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(const RgbPixel&, const RgbPixel&) = default;
};

/// Hexcone model.
inline HsvPixel rgb_to_hsv(RgbPixel p) noexcept {
  const int r = p.r, g = p.g, b = p.b;
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const double delta = mx - mn;
  HsvPixel out;
  out.v = mx / 255.0;
  out.s = (mx == 0) ? 0.0 : delta / mx;
  if (delta == 0.0) return out;
  double h;
  if (mx == r)
    h = 60.0 * ((g - b) / delta);
  else if (mx == g)
    h = 60.0 * ((b - r) / delta + 2.0);
  else
    h = 60.0 * ((r - g) / delta + 4.0);
  if (h < 0.0) h += 360.0;
  out.h = h;
  return out;
}

inline RgbPixel hsv_to_rgb(HsvPixel p) noexcept {
  double h = std::fmod(p.h, 360.0);
  if (h < 0.0) h += 360.0;
  const double chroma = p.v * p.s;
  const double hp = h / 60.0;
  const double x = chroma * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = p.v - chroma;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = chroma; g = x; break;
    case 1: r = x; g = chroma; break;
    case 2: g = chroma; b = x; break;
    case 3: g = x; b = chroma; break;
    case 4: r = x; b = chroma; break;
    default: r = chroma; b = x; break;
  }
  return {clip_round((r + m) * 255.0), clip_round((g + m) * 255.0), clip_round((b + m) * 255.0)};
}

/// Hue wraps modulo 360; saturation and value are clamped to [0, 1].
inline ImageBuffer shift_hsv(const ImageBuffer& img, double dh, double ds, double dv) {
  detail::require_rgb(img, "shift_hsv");
  ImageBuffer out(img.height(), img.width(), 3);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    HsvPixel hsv = rgb_to_hsv({src[i], src[i + 1], src[i + 2]});
    hsv.h = std::fmod(hsv.h + dh, 360.0);
    if (hsv.h < 0.0) hsv.h += 360.0;
    hsv.s = std::clamp(hsv.s + ds, 0.0, 1.0);
    hsv.v = std::clamp(hsv.v + dv, 0.0, 1.0);
    const RgbPixel rgb = hsv_to_rgb(hsv);
    dst[i] = rgb.r;
    dst[i + 1] = rgb.g;
    dst[i + 2] = rgb.b;
  }
  return out;
}

/// BT.601 luma replicated into all three channels.
inline ImageBuffer grayscale(const ImageBuffer& img) {
  detail::require_rgb(img, "grayscale");
  std::array<double, 256> wr{}, wg{}, wb{};
  for (int v = 0; v < 256; ++v) {
    wr[v] = 0.299 * v;
    wg[v] = 0.587 * v;
    wb[v] = 0.114 * v;
  }
  ImageBuffer out(img.height(), img.width(), 3);
  auto src = img.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const std::uint8_t y = clip_round(wr[src[i]] + wg[src[i + 1]] + wb[src[i + 2]]);
    dst[i] = dst[i + 1] = dst[i + 2] = y;
  }
  return out;
}

/// Runs an image-only op on a bundle; masks and boxes are copied verbatim.
template <typename Op>
SampleBundle on_image(const SampleBundle& in, Op&& op) {
  SampleBundle out;
  out.image = op(in.image);
  out.masks = in.masks;
  out.boxes = in.boxes;
  return out;
}

}  // namespace fastaug
