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
 * \file geom.hpp
 * \brief Geometric transforms with joint propagation to masks and boxes.
 *
 * Each transform comes in buffer overloads (ImageBuffer, MaskBuffer), a box
 * overload where it makes sense, and a SampleBundle overload that applies all
 * of them consistently. Masks are always sampled nearest.
 *
 * Conventions:
 *  - Positive angles rotate content counter-clockwise as displayed.
 *  - rotate / shift_scale_rotate sample pixel (x, y) at real coordinate
 *    (x, y) and rotate about ((W-1)/2, (H-1)/2).
 *  - resize uses half-pixel centres: x_s = (x_d + 0.5) * W / new_w - 0.5.
 *  - Box edges live in edge coordinates ([0, W] spans the image), so an edge
 *    at u maps to the pixel-centre coordinate u*W - 0.5 before an affine map.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fastaug/core.hpp"
#include "fastaug/sampling.hpp"

namespace fastaug {

// ---------------------------------------------------------------------------
// AffineMap

/// 2x3 matrix: (x, y) -> (a*x + b*y + c, d*x + e*y + f).
///
/// Used for inverse mapping (destination -> source) when resampling and for
/// forward mapping when moving box corners.
struct AffineMap {
  double a = 1.0, b = 0.0, c = 0.0;
  double d = 0.0, e = 1.0, f = 0.0;

  static constexpr AffineMap identity() noexcept { return {}; }

  detail::Point apply(double x, double y) const noexcept { return {a * x + b * y + c, d * x + e * y + f}; }

  /// Lookup through `first`, then through `second`: result(p) = second(first(p)).
  static AffineMap compose(const AffineMap& first, const AffineMap& second) noexcept {
    const AffineMap& s = second;
    const AffineMap& t = first;
    return {s.a * t.a + s.b * t.d, s.a * t.b + s.b * t.e, s.a * t.c + s.b * t.f + s.c,
            s.d * t.a + s.e * t.d, s.d * t.b + s.e * t.e, s.d * t.c + s.e * t.f + s.f};
  }

  std::optional<AffineMap> inverse() const noexcept {
    const double det = a * e - b * d;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double ia = e / det, ib = -b / det, id = -d / det, ie = a / det;
    return AffineMap{ia, ib, -(ia * c + ib * f), id, ie, -(id * c + ie * f)};
  }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// cos and sin of an angle in degrees; exact at multiples of 90.
inline std::pair<double, double> cos_sin_degrees(double theta) noexcept {
  double r = std::fmod(theta, 360.0);
  if (r < 0) r += 360.0;
  if (r == 0.0) return {1.0, 0.0};
  if (r == 90.0) return {0.0, 1.0};
  if (r == 180.0) return {-1.0, 0.0};
  if (r == 270.0) return {0.0, -1.0};
  const double rad = r * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

/// Forward and inverse maps of a shift-scale-rotate about the image centre.
struct AffinePair {
  AffineMap forward;  // source pixel -> destination pixel
  AffineMap inverse;  // destination pixel -> source pixel
};

/// forward = translate(dx*W, dy*H) . rotate(theta about centre) . scale(s about centre)
inline AffinePair shift_scale_rotate_maps(int width, int height, double dx, double dy, double scale,
                                          double theta) noexcept {
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double tx = dx * width;
  const double ty = dy * height;
  const auto [cs, sn] = cos_sin_degrees(theta);

  AffineMap fwd;
  fwd.a = scale * cs;
  fwd.b = scale * sn;
  fwd.d = -scale * sn;
  fwd.e = scale * cs;
  fwd.c = cx + tx - fwd.a * cx - fwd.b * cy;
  fwd.f = cy + ty - fwd.d * cx - fwd.e * cy;

  AffineMap inv;
  inv.a = cs / scale;
  inv.b = -sn / scale;
  inv.d = sn / scale;
  inv.e = cs / scale;
  inv.c = cx - inv.a * (cx + tx) - inv.b * (cy + ty);
  inv.f = cy - inv.d * (cx + tx) - inv.e * (cy + ty);
  return {fwd, inv};
}

// ---------------------------------------------------------------------------
// Box helpers

namespace detail {

inline std::optional<BoundingBox> clip_and_normalize(PixelBox p, int width, int height, std::int64_t label,
                                                     double min_area) {
  p.x_min = std::clamp(p.x_min, 0.0, static_cast<double>(width));
  p.x_max = std::clamp(p.x_max, 0.0, static_cast<double>(width));
  p.y_min = std::clamp(p.y_min, 0.0, static_cast<double>(height));
  p.y_max = std::clamp(p.y_max, 0.0, static_cast<double>(height));
  if (!(p.x_min < p.x_max) || !(p.y_min < p.y_max)) return std::nullopt;
  if ((p.x_max - p.x_min) * (p.y_max - p.y_min) < min_area) return std::nullopt;
  BoundingBox out = box_normalize(p, width, height, label);
  // Normalization can round a strictly positive extent away; keep the invariant.
  out.x_min = std::clamp(out.x_min, 0.0, 1.0);
  out.x_max = std::clamp(out.x_max, 0.0, 1.0);
  out.y_min = std::clamp(out.y_min, 0.0, 1.0);
  out.y_max = std::clamp(out.y_max, 0.0, 1.0);
  if (!out.valid()) return std::nullopt;
  return out;
}

}  // namespace detail

/// Axis-aligned envelope of the four box corners pushed through `forward`
/// (pixel-centre coordinates), clipped to the output frame. Boxes whose
/// clipped pixel area is below `min_area` or that become empty are dropped.
inline std::vector<BoundingBox> map_boxes_affine(const std::vector<BoundingBox>& boxes, const AffineMap& forward,
                                                 int in_w, int in_h, int out_w, int out_h, double min_area = 0.0) {
  // The identity map keeps boxes bit-exact instead of round-tripping them
  // through pixel units.
  const bool identity = in_w == out_w && in_h == out_h && forward.a == 1.0 && forward.b == 0.0 && forward.c == 0.0 &&
                        forward.d == 0.0 && forward.e == 1.0 && forward.f == 0.0;
  std::vector<BoundingBox> out;
  out.reserve(boxes.size());
  for (const auto& bx : boxes) {
    const PixelBox pb = box_denormalize(bx, in_w, in_h);
    if (identity) {
      if ((pb.x_max - pb.x_min) * (pb.y_max - pb.y_min) >= min_area) out.push_back(bx);
      continue;
    }
    const std::array<detail::Point, 4> corners{{{pb.x_min - 0.5, pb.y_min - 0.5},
                                                {pb.x_max - 0.5, pb.y_min - 0.5},
                                                {pb.x_min - 0.5, pb.y_max - 0.5},
                                                {pb.x_max - 0.5, pb.y_max - 0.5}}};
    PixelBox env{INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (const auto& c : corners) {
      const auto m = forward.apply(c.x, c.y);
      env.x_min = std::min(env.x_min, m.x + 0.5);
      env.x_max = std::max(env.x_max, m.x + 0.5);
      env.y_min = std::min(env.y_min, m.y + 0.5);
      env.y_max = std::max(env.y_max, m.y + 0.5);
    }
    if (auto nb = detail::clip_and_normalize(env, out_w, out_h, bx.label, min_area)) out.push_back(*nb);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flips

template <typename Buffer>
Buffer hflip(const Buffer& in) {
  Buffer out = make_like(in, in.height(), in.width());
  const int w = in.width();
  const int ch = in.channels();
  for (int y = 0; y < in.height(); ++y) {
    const std::uint8_t* s = in.row(y);
    std::uint8_t* o = out.row(y);
    if (ch == 1) {
      std::reverse_copy(s, s + w, o);
    } else {
      for (int x = 0; x < w; ++x) {
        const std::uint8_t* p = s + static_cast<std::size_t>(w - 1 - x) * 3;
        o[3 * x] = p[0];
        o[3 * x + 1] = p[1];
        o[3 * x + 2] = p[2];
      }
    }
  }
  return out;
}

template <typename Buffer>
Buffer vflip(const Buffer& in) {
  Buffer out = make_like(in, in.height(), in.width());
  const std::size_t stride = in.row_stride();
  for (int y = 0; y < in.height(); ++y) std::memcpy(out.row(y), in.row(in.height() - 1 - y), stride);
  return out;
}

inline BoundingBox hflip(const BoundingBox& b) noexcept { return {1.0 - b.x_max, b.y_min, 1.0 - b.x_min, b.y_max, b.label}; }
inline BoundingBox vflip(const BoundingBox& b) noexcept { return {b.x_min, 1.0 - b.y_max, b.x_max, 1.0 - b.y_min, b.label}; }

namespace detail {

template <typename BufferFn, typename BoxFn>
SampleBundle map_bundle(const SampleBundle& in, BufferFn&& buffer_fn, BoxFn&& box_fn) {
  SampleBundle out;
  out.image = buffer_fn(in.image);
  out.masks.reserve(in.masks.size());
  for (const auto& m : in.masks) out.masks.push_back(buffer_fn(m));
  out.boxes.reserve(in.boxes.size());
  for (const auto& b : in.boxes) out.boxes.push_back(box_fn(b));
  return out;
}

}  // namespace detail

inline SampleBundle hflip(const SampleBundle& in) {
  return detail::map_bundle(in, [](const auto& buf) { return hflip(buf); }, [](const BoundingBox& b) { return hflip(b); });
}

inline SampleBundle vflip(const SampleBundle& in) {
  return detail::map_bundle(in, [](const auto& buf) { return vflip(buf); }, [](const BoundingBox& b) { return vflip(b); });
}

// ---------------------------------------------------------------------------
// Quarter turns and the dihedral group

/// k counter-clockwise quarter turns (k taken mod 4). For k = 1 the output is
/// W x H with out[y][x] = in[x][W-1-y].
template <typename Buffer>
Buffer rot90(const Buffer& in, int k) {
  k = ((k % 4) + 4) % 4;
  const int h = in.height();
  const int w = in.width();
  const int ch = in.channels();
  if (k == 0) return in;
  if (k == 2) {
    Buffer out = make_like(in, h, w);
    for (int y = 0; y < h; ++y) {
      const std::uint8_t* s = in.row(h - 1 - y);
      std::uint8_t* o = out.row(y);
      for (int x = 0; x < w; ++x)
        std::memcpy(o + static_cast<std::size_t>(x) * ch, s + static_cast<std::size_t>(w - 1 - x) * ch, ch);
    }
    return out;
  }
  Buffer out = make_like(in, w, h);
  for (int y = 0; y < w; ++y) {
    std::uint8_t* o = out.row(y);
    for (int x = 0; x < h; ++x) {
      // k == 1: out[y][x] = in[x][w-1-y];  k == 3: out[y][x] = in[h-1-x][y]
      const int sy = (k == 1) ? x : h - 1 - x;
      const int sx = (k == 1) ? w - 1 - y : y;
      std::memcpy(o + static_cast<std::size_t>(x) * ch, in.row(sy) + static_cast<std::size_t>(sx) * ch, ch);
    }
  }
  return out;
}

/// Point (x, y) -> (y, 1 - x) per quarter turn, corners re-sorted.
inline BoundingBox rot90(const BoundingBox& b, int k) noexcept {
  k = ((k % 4) + 4) % 4;
  switch (k) {
    case 1: return {b.y_min, 1.0 - b.x_max, b.y_max, 1.0 - b.x_min, b.label};
    case 2: return {1.0 - b.x_max, 1.0 - b.y_max, 1.0 - b.x_min, 1.0 - b.y_min, b.label};
    case 3: return {1.0 - b.y_max, b.x_min, 1.0 - b.y_min, b.x_max, b.label};
    default: return b;
  }
}

inline SampleBundle rot90(const SampleBundle& in, int k) {
  return detail::map_bundle(in, [k](const auto& buf) { return rot90(buf, k); },
                            [k](const BoundingBox& b) { return rot90(b, k); });
}

constexpr int kD4Order = 8;

/// Dihedral element 0..7: e < 4 is rot90(e); e >= 4 is hflip after rot90(e - 4).
template <typename Target>
Target d4(const Target& in, int element) {
  if (element < 0 || element >= kD4Order) throw ParameterError("d4 element must be in [0, 8)");
  if (element < 4) return rot90(in, element);
  return hflip(rot90(in, element - 4));
}

// ---------------------------------------------------------------------------
// Affine resampling: rotate, shift_scale_rotate

template <typename Buffer>
Buffer warp_affine(const Buffer& in, const AffineMap& inverse, int out_h, int out_w, Interpolation interp,
                   const BorderPolicy& border) {
  const AffineMap m = inverse;
  return warp_with(
      in, out_h, out_w,
      [m](int x, int y) {
        const double xd = x, yd = y;
        return detail::Point{m.a * xd + m.b * yd + m.c, m.d * xd + m.e * yd + m.f};
      },
      interp, border);
}

inline SampleBundle warp_affine(const SampleBundle& in, const AffinePair& maps, Interpolation interp,
                                const BorderPolicy& border, double min_area = 0.0) {
  const int h = in.image.height();
  const int w = in.image.width();
  SampleBundle out;
  out.image = warp_affine(in.image, maps.inverse, h, w, interp, border);
  out.masks.reserve(in.masks.size());
  for (const auto& m : in.masks) out.masks.push_back(warp_affine(m, maps.inverse, h, w, interp, border));
  out.boxes = map_boxes_affine(in.boxes, maps.forward, w, h, w, h, min_area);
  return out;
}

template <typename Buffer>
Buffer shift_scale_rotate(const Buffer& in, double dx, double dy, double scale, double theta,
                          Interpolation interp = Interpolation::bilinear, const BorderPolicy& border = {}) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("shift_scale_rotate: scale must be > 0");
  const auto maps = shift_scale_rotate_maps(in.width(), in.height(), dx, dy, scale, theta);
  return warp_affine(in, maps.inverse, in.height(), in.width(), interp, border);
}

inline SampleBundle shift_scale_rotate(const SampleBundle& in, double dx, double dy, double scale, double theta,
                                       Interpolation interp = Interpolation::bilinear,
                                       const BorderPolicy& border = {}, double min_area = 0.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("shift_scale_rotate: scale must be > 0");
  const auto maps = shift_scale_rotate_maps(in.image.width(), in.image.height(), dx, dy, scale, theta);
  return warp_affine(in, maps, interp, border, min_area);
}

template <typename Buffer>
Buffer rotate(const Buffer& in, double theta, Interpolation interp = Interpolation::bilinear,
              const BorderPolicy& border = {}) {
  return shift_scale_rotate(in, 0.0, 0.0, 1.0, theta, interp, border);
}

inline SampleBundle rotate(const SampleBundle& in, double theta, Interpolation interp = Interpolation::bilinear,
                           const BorderPolicy& border = {}, double min_area = 0.0) {
  return shift_scale_rotate(in, 0.0, 0.0, 1.0, theta, interp, border, min_area);
}

// ---------------------------------------------------------------------------
// Crop and pad

struct CropWindow {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;
};

namespace detail {

inline void check_crop(const CropWindow& win, int w, int h) {
  if (win.width < 1 || win.height < 1) throw ParameterError("crop: window must be at least 1x1");
  if (win.x0 < 0 || win.y0 < 0 || win.x0 > w - win.width || win.y0 > h - win.height)
    throw ParameterError("crop: window (" + std::to_string(win.x0) + "," + std::to_string(win.y0) + "," +
                         std::to_string(win.width) + "," + std::to_string(win.height) + ") exceeds " +
                         std::to_string(w) + "x" + std::to_string(h) + " image");
}

}  // namespace detail

template <typename Buffer>
Buffer crop(const Buffer& in, const CropWindow& win) {
  detail::check_crop(win, in.width(), in.height());
  Buffer out = make_like(in, win.height, win.width);
  const std::size_t ch = static_cast<std::size_t>(in.channels());
  for (int y = 0; y < win.height; ++y)
    std::memcpy(out.row(y), in.row(win.y0 + y) + win.x0 * ch, out.row_stride());
  return out;
}

/// Intersects the box with the window in pixel space; nullopt if empty.
inline std::optional<BoundingBox> crop(const BoundingBox& b, const CropWindow& win, int w, int h) {
  if (win.x0 == 0 && win.y0 == 0 && win.width == w && win.height == h) return b;
  const PixelBox p = box_denormalize(b, w, h);
  const PixelBox shifted{p.x_min - win.x0, p.y_min - win.y0, p.x_max - win.x0, p.y_max - win.y0};
  return detail::clip_and_normalize(shifted, win.width, win.height, b.label, 0.0);
}

inline SampleBundle crop(const SampleBundle& in, const CropWindow& win) {
  const int w = in.image.width();
  const int h = in.image.height();
  detail::check_crop(win, w, h);
  SampleBundle out;
  out.image = crop(in.image, win);
  for (const auto& m : in.masks) out.masks.push_back(crop(m, win));
  for (const auto& b : in.boxes)
    if (auto nb = crop(b, win, w, h)) out.boxes.push_back(*nb);
  return out;
}

/// Draws x0 then y0 (exactly two draws).
inline CropWindow random_crop_window(int img_w, int img_h, int w, int h, RngStream& rng) {
  if (w < 1 || h < 1 || w > img_w || h > img_h)
    throw ParameterError("random_crop: " + std::to_string(w) + "x" + std::to_string(h) + " window does not fit " +
                         std::to_string(img_w) + "x" + std::to_string(img_h) + " image");
  const auto x0 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(img_w - w + 1)));
  const auto y0 = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(img_h - h + 1)));
  return {x0, y0, w, h};
}

template <typename Target>
Target random_crop(const Target& in, int w, int h, RngStream& rng) {
  if constexpr (std::is_same_v<Target, SampleBundle>)
    return crop(in, random_crop_window(in.image.width(), in.image.height(), w, h, rng));
  else
    return crop(in, random_crop_window(in.width(), in.height(), w, h, rng));
}

struct PadOffsets {
  int left = 0;
  int top = 0;
};

inline PadOffsets pad_offsets(int w, int h, int target_w, int target_h) {
  if (w > target_w || h > target_h)
    throw ParameterError("pad_to_size: " + std::to_string(w) + "x" + std::to_string(h) + " input exceeds target " +
                         std::to_string(target_w) + "x" + std::to_string(target_h));
  return {(target_w - w) / 2, (target_h - h) / 2};
}

template <typename Buffer>
Buffer pad_to_size(const Buffer& in, int target_w, int target_h, const BorderPolicy& border = {}) {
  const int w = in.width();
  const int h = in.height();
  const PadOffsets off = pad_offsets(w, h, target_w, target_h);
  const std::size_t ch = static_cast<std::size_t>(in.channels());
  Buffer out = make_like(in, target_h, target_w);

  if (border.mode == BorderMode::reflect101) {
    for (int y = 0; y < target_h; ++y) {
      const std::uint8_t* s = in.row(reflect101(y - off.top, h));
      std::uint8_t* o = out.row(y);
      for (int x = 0; x < target_w; ++x)
        std::memcpy(o + x * ch, s + reflect101(x - off.left, w) * ch, ch);
    }
    return out;
  }

  std::array<std::uint8_t, 3> fill{};
  if constexpr (std::is_same_v<Buffer, MaskBuffer>)
    fill[0] = border.mask_fill;
  else
    fill = border.fill;
  if (ch == 1) {
    std::fill(out.data().begin(), out.data().end(), fill[0]);
  } else {
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); i += 3) {
      d[i] = fill[0];
      d[i + 1] = fill[1];
      d[i + 2] = fill[2];
    }
  }
  for (int y = 0; y < h; ++y) std::memcpy(out.row(y + off.top) + off.left * ch, in.row(y), in.row_stride());
  return out;
}

inline BoundingBox pad_to_size(const BoundingBox& b, int w, int h, int target_w, int target_h) {
  const PadOffsets off = pad_offsets(w, h, target_w, target_h);
  if (w == target_w && h == target_h) return b;
  const PixelBox p = box_denormalize(b, w, h);
  return box_normalize({p.x_min + off.left, p.y_min + off.top, p.x_max + off.left, p.y_max + off.top}, target_w,
                       target_h, b.label);
}

inline SampleBundle pad_to_size(const SampleBundle& in, int target_w, int target_h, const BorderPolicy& border = {}) {
  const int w = in.image.width();
  const int h = in.image.height();
  pad_offsets(w, h, target_w, target_h);
  return detail::map_bundle(
      in, [&](const auto& buf) { return pad_to_size(buf, target_w, target_h, border); },
      [&](const BoundingBox& b) { return pad_to_size(b, w, h, target_w, target_h); });
}

// ---------------------------------------------------------------------------
// Resize

namespace detail {

struct AxisTap {
  int i0;
  int i1;
  double frac;  // weight of i1
};

// Half-pixel-centred source taps, clamped to the edge.
inline std::vector<AxisTap> resize_taps(int src, int dst, Interpolation interp) {
  std::vector<AxisTap> taps(static_cast<std::size_t>(dst));
  const double ratio = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double s = (i + 0.5) * ratio - 0.5;
    if (interp == Interpolation::nearest) {
      const int n = static_cast<int>(std::clamp<long long>(fast_floor(s + 0.5), 0, src - 1));
      taps[i] = {n, n, 0.0};
    } else {
      const long long f = fast_floor(s);
      const double frac = s - static_cast<double>(f);
      const int i0 = static_cast<int>(std::clamp<long long>(f, 0, src - 1));
      const int i1 = static_cast<int>(std::clamp<long long>(f + 1, 0, src - 1));
      taps[i] = {i0, i1, frac};
    }
  }
  return taps;
}

}  // namespace detail

template <typename Buffer>
Buffer resize(const Buffer& in, int new_w, int new_h, Interpolation interp = Interpolation::bilinear) {
  if (new_w < 1 || new_h < 1) throw ParameterError("resize: output size must be at least 1x1");
  if constexpr (std::is_same_v<Buffer, MaskBuffer>) interp = Interpolation::nearest;
  const auto xt = detail::resize_taps(in.width(), new_w, interp);
  const auto yt = detail::resize_taps(in.height(), new_h, interp);
  const int ch = in.channels();
  Buffer out = make_like(in, new_h, new_w);
  for (int y = 0; y < new_h; ++y) {
    const auto& ty = yt[y];
    const std::uint8_t* r0 = in.row(ty.i0);
    const std::uint8_t* r1 = in.row(ty.i1);
    std::uint8_t* o = out.row(y);
    for (int x = 0; x < new_w; ++x) {
      const auto& tx = xt[x];
      if (interp == Interpolation::nearest) {
        std::memcpy(o + static_cast<std::size_t>(x) * ch, r0 + static_cast<std::size_t>(tx.i0) * ch, ch);
        continue;
      }
      const double fx = tx.frac;
      const double fy = ty.frac;
      for (int c = 0; c < ch; ++c) {
        const double top = (1.0 - fx) * r0[tx.i0 * ch + c] + fx * r0[tx.i1 * ch + c];
        const double bot = (1.0 - fx) * r1[tx.i0 * ch + c] + fx * r1[tx.i1 * ch + c];
        o[x * ch + c] = clip_round((1.0 - fy) * top + fy * bot);
      }
    }
  }
  return out;
}

/// Boxes are normalized, so resizing leaves them unchanged.
inline SampleBundle resize(const SampleBundle& in, int new_w, int new_h,
                           Interpolation interp = Interpolation::bilinear) {
  return detail::map_bundle(in, [&](const auto& buf) { return resize(buf, new_w, new_h, interp); },
                            [](const BoundingBox& b) { return b; });
}

// ---------------------------------------------------------------------------
// Random sized crop

/// Draws s in [min_scale, max_scale], then a square window of side
/// round(sqrt(s) * min(W, H)) placed by random_crop. Three draws: s, x0, y0.
inline CropWindow random_sized_crop_window(int img_w, int img_h, double min_scale, double max_scale, RngStream& rng) {
  if (!(min_scale > 0.0) || !(min_scale <= max_scale) || !(max_scale <= 1.0))
    throw ParameterError("random_sized_crop: need 0 < min_scale <= max_scale <= 1");
  const double s = rng.uniform(min_scale, max_scale);
  const int short_side = std::min(img_w, img_h);
  const int side = std::clamp(static_cast<int>(std::floor(std::sqrt(s) * short_side + 0.5)), 1, short_side);
  return random_crop_window(img_w, img_h, side, side, rng);
}

template <typename Target>
Target random_sized_crop(const Target& in, double min_scale, double max_scale, int out_w, int out_h, RngStream& rng,
                         Interpolation interp = Interpolation::bilinear) {
  if (out_w < 1 || out_h < 1) throw ParameterError("random_sized_crop: output size must be at least 1x1");
  CropWindow win;
  if constexpr (std::is_same_v<Target, SampleBundle>)
    win = random_sized_crop_window(in.image.width(), in.image.height(), min_scale, max_scale, rng);
  else
    win = random_sized_crop_window(in.width(), in.height(), min_scale, max_scale, rng);
  return resize(crop(in, win), out_w, out_h, interp);
}

}  // namespace fastaug
