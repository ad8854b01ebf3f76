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
 * \file warp.hpp
 * \brief Non-rigid deformations: dense remap, grid distortion, elastic transform.
 *
 * Both deformations build a DisplacementField and hand it to remap(). Boxes
 * are not propagated through free-form warps; a bundle carrying boxes is
 * rejected.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fastaug/core.hpp"
#include "fastaug/sampling.hpp"

namespace fastaug {

/// Per-destination-pixel source offsets: source = (x + dx[y][x], y + dy[y][x]).
struct DisplacementField {
  int height = 0;
  int width = 0;
  std::vector<double> dx;
  std::vector<double> dy;

  DisplacementField() = default;
  DisplacementField(int h, int w)
      : height(h), width(w), dx(static_cast<std::size_t>(h) * w, 0.0), dy(static_cast<std::size_t>(h) * w, 0.0) {}

  std::size_t index(int y, int x) const noexcept { return static_cast<std::size_t>(y) * width + x; }
};

template <typename Buffer>
Buffer remap(const Buffer& in, const DisplacementField& field, Interpolation interp = Interpolation::bilinear,
             const BorderPolicy& border = {}) {
  if (field.height != in.height() || field.width != in.width() ||
      field.dx.size() != static_cast<std::size_t>(field.height) * field.width || field.dy.size() != field.dx.size())
    throw ParameterError("remap: displacement field does not match image size");
  const double* fdx = field.dx.data();
  const double* fdy = field.dy.data();
  const int w = field.width;
  return warp_with(
      in, in.height(), in.width(),
      [=](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        return detail::Point{x + fdx[i], y + fdy[i]};
      },
      interp, border);
}

namespace detail {

inline void reject_boxes(const SampleBundle& b, const char* op) {
  if (!b.boxes.empty())
    throw UnsupportedTargetError(std::string(op) + ": bounding boxes are not supported under free-form warps");
}

}  // namespace detail

inline SampleBundle remap(const SampleBundle& in, const DisplacementField& field,
                          Interpolation interp = Interpolation::bilinear, const BorderPolicy& border = {}) {
  detail::reject_boxes(in, "remap");
  SampleBundle out;
  out.image = remap(in.image, field, interp, border);
  out.masks.reserve(in.masks.size());
  for (const auto& m : in.masks) out.masks.push_back(remap(m, field, interp, border));
  return out;
}

// ---------------------------------------------------------------------------
// Grid distortion

struct GridDistortParams {
  int num_steps = 5;
  double distort_limit = 0.3;
  Interpolation interp = Interpolation::bilinear;
  BorderPolicy border{};

  friend bool operator==(const GridDistortParams&, const GridDistortParams&) = default;
};

inline void validate(const GridDistortParams& p) {
  if (p.num_steps < 1) throw ParameterError("grid_distortion: num_steps must be >= 1");
  if (!(p.distort_limit >= 0.0 && p.distort_limit < 1.0))
    throw ParameterError("grid_distortion: distort_limit must be in [0, 1)");
}

/// Source coordinate for every destination index along one axis of `length`
/// samples. The span [0, length-1] is cut into num_steps equal cells; node k
/// carries factor f_k (num_steps + 1 of them) and cell k gets source length
/// proportional to (f_k + f_{k+1}) / 2, rescaled so the cells still cover the
/// full span. Positive factors make the mapping strictly increasing.
inline std::vector<double> grid_axis_mapping(int length, int num_steps, std::span<const double> node_factors) {
  if (num_steps < 1) throw ParameterError("grid_axis_mapping: num_steps must be >= 1");
  if (node_factors.size() != static_cast<std::size_t>(num_steps) + 1)
    throw ParameterError("grid_axis_mapping: need num_steps + 1 factors");
  std::vector<double> map(static_cast<std::size_t>(length));
  if (length == 1) {
    map[0] = 0.0;
    return map;
  }
  const double span = length - 1;
  const double nominal = span / num_steps;

  std::vector<double> seg(static_cast<std::size_t>(num_steps));
  double total = 0.0;
  for (int k = 0; k < num_steps; ++k) {
    seg[k] = nominal * 0.5 * (node_factors[k] + node_factors[k + 1]);
    total += seg[k];
  }
  const double rescale = span / total;
  std::vector<double> start(static_cast<std::size_t>(num_steps) + 1);
  start[0] = 0.0;
  for (int k = 0; k < num_steps; ++k) {
    seg[k] *= rescale;
    start[k + 1] = start[k] + seg[k];
  }
  start[num_steps] = span;

  for (int x = 0; x < length; ++x) {
    const int k = std::min(static_cast<int>(x / nominal), num_steps - 1);
    const double t = (x - k * nominal) / nominal;
    map[x] = start[k] + t * (start[k + 1] - start[k]);
  }
  return map;
}

/// Draws num_steps + 1 x-factors then num_steps + 1 y-factors, each
/// 1 + uniform(-d, d), and returns the resulting displacement field.
inline DisplacementField grid_distortion_field(int height, int width, const GridDistortParams& p, RngStream& rng) {
  validate(p);
  const double d = p.distort_limit;
  std::vector<double> fx(static_cast<std::size_t>(p.num_steps) + 1);
  std::vector<double> fy(fx.size());
  for (auto& f : fx) f = 1.0 + rng.uniform(-d, d);
  for (auto& f : fy) f = 1.0 + rng.uniform(-d, d);
  const auto mx = grid_axis_mapping(width, p.num_steps, fx);
  const auto my = grid_axis_mapping(height, p.num_steps, fy);

  DisplacementField field(height, width);
  for (int y = 0; y < height; ++y) {
    const double ddy = my[y] - y;
    for (int x = 0; x < width; ++x) {
      field.dx[field.index(y, x)] = mx[x] - x;
      field.dy[field.index(y, x)] = ddy;
    }
  }
  return field;
}

template <typename Buffer>
Buffer grid_distortion(const Buffer& in, const GridDistortParams& p, RngStream& rng) {
  return remap(in, grid_distortion_field(in.height(), in.width(), p, rng), p.interp, p.border);
}

inline SampleBundle grid_distortion(const SampleBundle& in, const GridDistortParams& p, RngStream& rng) {
  detail::reject_boxes(in, "grid_distortion");
  validate(p);
  return remap(in, grid_distortion_field(in.image.height(), in.image.width(), p, rng), p.interp, p.border);
}

// ---------------------------------------------------------------------------
// Elastic transform

/// alpha and sigma have no defaults on purpose.
struct ElasticParams {
  double alpha;
  double sigma;
  Interpolation interp = Interpolation::bilinear;
  BorderPolicy border{};

  friend bool operator==(const ElasticParams&, const ElasticParams&) = default;
};

inline void validate(const ElasticParams& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) throw ParameterError("elastic_transform: alpha must be >= 0");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw ParameterError("elastic_transform: sigma must be > 0");
}

/// Normalized Gaussian taps, radius ceil(3 sigma); index radius is the centre.
inline std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("gaussian_kernel: sigma must be > 0");
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * static_cast<std::size_t>(r) + 1);
  double sum = 0.0;
  for (int i = 0; i <= r; ++i) {
    const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k[r + i] = v;
    k[r - i] = v;
    sum += (i == 0) ? v : 2.0 * v;
  }
  for (auto& v : k) v /= sum;
  return k;
}

/// Separable convolution (rows, then columns) with reflect-101 edges.
inline std::vector<double> gaussian_blur(std::span<const double> plane, int height, int width, double sigma) {
  const auto k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> tmp(plane.size());
  std::vector<double> out(plane.size());

  std::vector<int> xi(static_cast<std::size_t>(width) + 2 * r);
  for (int i = 0; i < static_cast<int>(xi.size()); ++i) xi[i] = reflect101(i - r, width);
  for (int y = 0; y < height; ++y) {
    const double* row = plane.data() + static_cast<std::size_t>(y) * width;
    double* o = tmp.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int j = 0; j <= 2 * r; ++j) acc += k[j] * row[xi[x + j]];
      o[x] = acc;
    }
  }

  std::vector<int> yi(static_cast<std::size_t>(height) + 2 * r);
  for (int i = 0; i < static_cast<int>(yi.size()); ++i) yi[i] = reflect101(i - r, height);
  for (int y = 0; y < height; ++y) {
    double* o = out.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) o[x] = 0.0;
    for (int j = 0; j <= 2 * r; ++j) {
      const double kj = k[j];
      const double* src = tmp.data() + static_cast<std::size_t>(yi[y + j]) * width;
      for (int x = 0; x < width; ++x) o[x] += kj * src[x];
    }
  }
  return out;
}

/// Draws the u plane (row-major) then the v plane, each uniform(-1, 1) per
/// pixel; smooths both and scales by alpha. |displacement| <= alpha.
inline DisplacementField elastic_field(int height, int width, const ElasticParams& p, RngStream& rng) {
  validate(p);
  const std::size_t n = static_cast<std::size_t>(height) * width;
  std::vector<double> u(n), v(n);
  for (auto& s : u) s = rng.uniform(-1.0, 1.0);
  for (auto& s : v) s = rng.uniform(-1.0, 1.0);

  DisplacementField field(height, width);
  if (p.alpha == 0.0) return field;
  field.dx = gaussian_blur(u, height, width, p.sigma);
  field.dy = gaussian_blur(v, height, width, p.sigma);
  for (auto& s : field.dx) s *= p.alpha;
  for (auto& s : field.dy) s *= p.alpha;
  return field;
}

template <typename Buffer>
Buffer elastic_transform(const Buffer& in, const ElasticParams& p, RngStream& rng) {
  return remap(in, elastic_field(in.height(), in.width(), p, rng), p.interp, p.border);
}

inline SampleBundle elastic_transform(const SampleBundle& in, const ElasticParams& p, RngStream& rng) {
  detail::reject_boxes(in, "elastic_transform");
  validate(p);
  return remap(in, elastic_field(in.image.height(), in.image.width(), p, rng), p.interp, p.border);
}

}  // namespace fastaug
