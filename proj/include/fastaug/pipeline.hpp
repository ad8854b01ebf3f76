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
 * \file pipeline.hpp
 * \brief Flat, seeded, probabilistic composition of transforms and its JSON
 *        config format.
 *
 * Random stream contract for apply(): one RngStream seeded with the
 * effective seed. For each transform in list order a gate u = uniform_f64()
 * is drawn unconditionally; the transform runs iff u < p and then draws its
 * own parameters in this order:
 *
 *   HorizontalFlip, VerticalFlip, Grayscale, PadToSize, Resize   (none)
 *   Rotate              theta
 *   ShiftScaleRotate    dx, dy, scale, theta
 *   RandomCrop          x0, y0
 *   RandomSizedCrop     s, x0, y0
 *   D4                  element = uniform_int(8)
 *   GridDistortion      num_steps + 1 x factors, num_steps + 1 y factors
 *   ElasticTransform    H*W u samples, H*W v samples
 *   Brightness beta | Contrast c | Gamma g
 *   ShiftRGB            dr, dg, db
 *   ShiftHSV            dh, ds, dv
 *
 * Sampled parameters (Sampled) consume exactly one draw whether they are
 * fixed or a [lo, hi] range, so the draw count never depends on values.
 *
 * Config document:
 *   {"seed": 42, "transforms": [{"name": "Gamma", "p": 1, "params": {"g": 2.0}}]}
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fastaug/core.hpp"
#include "fastaug/geom.hpp"
#include "fastaug/photo.hpp"
#include "fastaug/warp.hpp"

namespace fastaug {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class TransformKind {
  HorizontalFlip,
  VerticalFlip,
  Rotate,
  ShiftScaleRotate,
  RandomCrop,
  PadToSize,
  Resize,
  RandomSizedCrop,
  D4,
  GridDistortion,
  ElasticTransform,
  Brightness,
  Contrast,
  Gamma,
  ShiftRGB,
  ShiftHSV,
  Grayscale,
};

inline constexpr std::array<std::pair<TransformKind, std::string_view>, 17> kTransformNames{{
    {TransformKind::HorizontalFlip, "HorizontalFlip"},
    {TransformKind::VerticalFlip, "VerticalFlip"},
    {TransformKind::Rotate, "Rotate"},
    {TransformKind::ShiftScaleRotate, "ShiftScaleRotate"},
    {TransformKind::RandomCrop, "RandomCrop"},
    {TransformKind::PadToSize, "PadToSize"},
    {TransformKind::Resize, "Resize"},
    {TransformKind::RandomSizedCrop, "RandomSizedCrop"},
    {TransformKind::D4, "D4"},
    {TransformKind::GridDistortion, "GridDistortion"},
    {TransformKind::ElasticTransform, "ElasticTransform"},
    {TransformKind::Brightness, "Brightness"},
    {TransformKind::Contrast, "Contrast"},
    {TransformKind::Gamma, "Gamma"},
    {TransformKind::ShiftRGB, "ShiftRGB"},
    {TransformKind::ShiftHSV, "ShiftHSV"},
    {TransformKind::Grayscale, "Grayscale"},
}};

inline std::string_view to_string(TransformKind k) noexcept {
  for (const auto& [kind, name] : kTransformNames)
    if (kind == k) return name;
  return "?";
}

inline std::string valid_transform_names() {
  std::string s;
  for (const auto& [kind, name] : kTransformNames) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

inline std::optional<TransformKind> transform_kind_from_string(std::string_view name) noexcept {
  for (const auto& [kind, n] : kTransformNames)
    if (n == name) return kind;
  return std::nullopt;
}

/// A parameter that is either fixed or drawn uniformly from [lo, hi].
struct Sampled {
  double lo = 0.0;
  double hi = 0.0;
  bool range = false;

  static Sampled fixed(double v) noexcept { return {v, v, false}; }
  static Sampled between(double lo, double hi) noexcept { return {lo, hi, true}; }

  /// Always one draw; a fixed value comes back exactly.
  double draw(RngStream& rng) const noexcept { return rng.uniform(lo, hi); }

  friend bool operator==(const Sampled&, const Sampled&) = default;
};

struct NoParams {
  friend bool operator==(const NoParams&, const NoParams&) = default;
};
struct RotateParams {
  Sampled theta;
  Interpolation interp = Interpolation::bilinear;
  BorderPolicy border{};
  friend bool operator==(const RotateParams&, const RotateParams&) = default;
};
struct ShiftScaleRotateParams {
  Sampled dx, dy, scale = Sampled::fixed(1.0), theta;
  Interpolation interp = Interpolation::bilinear;
  BorderPolicy border{};
  friend bool operator==(const ShiftScaleRotateParams&, const ShiftScaleRotateParams&) = default;
};
struct SizeParams {
  int width = 0;
  int height = 0;
  friend bool operator==(const SizeParams&, const SizeParams&) = default;
};
struct PadParams {
  int width = 0;
  int height = 0;
  BorderPolicy border{};
  friend bool operator==(const PadParams&, const PadParams&) = default;
};
struct ResizeParams {
  int width = 0;
  int height = 0;
  Interpolation interp = Interpolation::bilinear;
  friend bool operator==(const ResizeParams&, const ResizeParams&) = default;
};
struct RandomSizedCropParams {
  double min_scale = 0.08;
  double max_scale = 1.0;
  int width = 0;
  int height = 0;
  Interpolation interp = Interpolation::bilinear;
  friend bool operator==(const RandomSizedCropParams&, const RandomSizedCropParams&) = default;
};
struct ScalarParams {  // Brightness beta, Contrast c, Gamma g
  Sampled value;
  friend bool operator==(const ScalarParams&, const ScalarParams&) = default;
};
struct Triple {  // ShiftRGB dr/dg/db, ShiftHSV dh/ds/dv
  Sampled first, second, third;
  friend bool operator==(const Triple&, const Triple&) = default;
};

using TransformParams = std::variant<NoParams, RotateParams, ShiftScaleRotateParams, SizeParams, PadParams,
                                     ResizeParams, RandomSizedCropParams, GridDistortParams, ElasticParams,
                                     ScalarParams, Triple>;

struct TransformSpec {
  TransformKind kind = TransformKind::HorizontalFlip;
  TransformParams params{};
  double p = 1.0;

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

struct Pipeline {
  std::vector<TransformSpec> transforms;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void require(bool ok, TransformKind k, const std::string& msg) {
  if (!ok) throw ConfigError(std::string(to_string(k)) + ": " + msg);
}

inline void check_sampled(const Sampled& s, TransformKind k, const char* field, double min, bool min_inclusive) {
  require(std::isfinite(s.lo) && std::isfinite(s.hi), k, std::string(field) + " must be finite");
  require(s.lo <= s.hi, k, std::string(field) + " range must satisfy lo <= hi");
  const bool ok = min_inclusive ? s.lo >= min : s.lo > min;
  require(ok, k, std::string(field) + (min_inclusive ? " must be >= " : " must be > ") + std::to_string(min));
}

inline void check_unbounded(const Sampled& s, TransformKind k, const char* field) {
  check_sampled(s, k, field, -INFINITY, true);
}

template <typename P>
const P& params_as(const TransformSpec& t) {
  const P* p = std::get_if<P>(&t.params);
  if (!p) throw ConfigError(std::string(to_string(t.kind)) + ": parameter record does not match transform kind");
  return *p;
}

}  // namespace detail

/// Throws ConfigError describing the first problem found.
inline void validate(const TransformSpec& t) {
  using detail::require;
  const auto k = t.kind;
  require(t.p >= 0.0 && t.p <= 1.0, k, "p must be in [0, 1]");
  switch (k) {
    case TransformKind::HorizontalFlip:
    case TransformKind::VerticalFlip:
    case TransformKind::D4:
    case TransformKind::Grayscale:
      detail::params_as<NoParams>(t);
      break;
    case TransformKind::Rotate:
      detail::check_unbounded(detail::params_as<RotateParams>(t).theta, k, "theta");
      break;
    case TransformKind::ShiftScaleRotate: {
      const auto& q = detail::params_as<ShiftScaleRotateParams>(t);
      detail::check_unbounded(q.dx, k, "dx");
      detail::check_unbounded(q.dy, k, "dy");
      detail::check_sampled(q.scale, k, "scale", 0.0, false);
      detail::check_unbounded(q.theta, k, "theta");
      break;
    }
    case TransformKind::RandomCrop: {
      const auto& q = detail::params_as<SizeParams>(t);
      require(q.width >= 1 && q.height >= 1, k, "width and height must be >= 1");
      break;
    }
    case TransformKind::PadToSize: {
      const auto& q = detail::params_as<PadParams>(t);
      require(q.width >= 1 && q.height >= 1, k, "width and height must be >= 1");
      break;
    }
    case TransformKind::Resize: {
      const auto& q = detail::params_as<ResizeParams>(t);
      require(q.width >= 1 && q.height >= 1, k, "width and height must be >= 1");
      break;
    }
    case TransformKind::RandomSizedCrop: {
      const auto& q = detail::params_as<RandomSizedCropParams>(t);
      require(q.min_scale > 0.0 && q.min_scale <= q.max_scale && q.max_scale <= 1.0, k,
              "need 0 < min_scale <= max_scale <= 1");
      require(q.width >= 1 && q.height >= 1, k, "width and height must be >= 1");
      break;
    }
    case TransformKind::GridDistortion:
      try {
        validate(detail::params_as<GridDistortParams>(t));
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
      break;
    case TransformKind::ElasticTransform:
      try {
        validate(detail::params_as<ElasticParams>(t));
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
      break;
    case TransformKind::Brightness:
      detail::check_sampled(detail::params_as<ScalarParams>(t).value, k, "beta", 0.0, true);
      break;
    case TransformKind::Contrast:
      detail::check_sampled(detail::params_as<ScalarParams>(t).value, k, "c", 0.0, true);
      break;
    case TransformKind::Gamma:
      detail::check_sampled(detail::params_as<ScalarParams>(t).value, k, "g", 0.0, false);
      break;
    case TransformKind::ShiftRGB:
    case TransformKind::ShiftHSV: {
      const auto& q = detail::params_as<Triple>(t);
      const bool rgb = k == TransformKind::ShiftRGB;
      detail::check_unbounded(q.first, k, rgb ? "dr" : "dh");
      detail::check_unbounded(q.second, k, rgb ? "dg" : "ds");
      detail::check_unbounded(q.third, k, rgb ? "db" : "dv");
      break;
    }
  }
}

inline void validate(const Pipeline& p) {
  for (const auto& t : p.transforms) validate(t);
}

// ---------------------------------------------------------------------------
// Application

/// Runs one transform (its gate already passed), drawing its parameters.
inline SampleBundle apply_transform(const TransformSpec& t, const SampleBundle& b, RngStream& rng) {
  switch (t.kind) {
    case TransformKind::HorizontalFlip:
      return hflip(b);
    case TransformKind::VerticalFlip:
      return vflip(b);
    case TransformKind::Rotate: {
      const auto& q = std::get<RotateParams>(t.params);
      return rotate(b, q.theta.draw(rng), q.interp, q.border);
    }
    case TransformKind::ShiftScaleRotate: {
      const auto& q = std::get<ShiftScaleRotateParams>(t.params);
      const double dx = q.dx.draw(rng);
      const double dy = q.dy.draw(rng);
      const double scale = q.scale.draw(rng);
      const double theta = q.theta.draw(rng);
      return shift_scale_rotate(b, dx, dy, scale, theta, q.interp, q.border);
    }
    case TransformKind::RandomCrop: {
      const auto& q = std::get<SizeParams>(t.params);
      return random_crop(b, q.width, q.height, rng);
    }
    case TransformKind::PadToSize: {
      const auto& q = std::get<PadParams>(t.params);
      return pad_to_size(b, q.width, q.height, q.border);
    }
    case TransformKind::Resize: {
      const auto& q = std::get<ResizeParams>(t.params);
      return resize(b, q.width, q.height, q.interp);
    }
    case TransformKind::RandomSizedCrop: {
      const auto& q = std::get<RandomSizedCropParams>(t.params);
      return random_sized_crop(b, q.min_scale, q.max_scale, q.width, q.height, rng, q.interp);
    }
    case TransformKind::D4:
      return d4(b, static_cast<int>(rng.uniform_int(kD4Order)));
    case TransformKind::GridDistortion:
      return grid_distortion(b, std::get<GridDistortParams>(t.params), rng);
    case TransformKind::ElasticTransform:
      return elastic_transform(b, std::get<ElasticParams>(t.params), rng);
    case TransformKind::Brightness: {
      const double beta = std::get<ScalarParams>(t.params).value.draw(rng);
      return on_image(b, [&](const ImageBuffer& img) { return brightness(img, beta); });
    }
    case TransformKind::Contrast: {
      const double c = std::get<ScalarParams>(t.params).value.draw(rng);
      return on_image(b, [&](const ImageBuffer& img) { return contrast(img, c); });
    }
    case TransformKind::Gamma: {
      const double g = std::get<ScalarParams>(t.params).value.draw(rng);
      return on_image(b, [&](const ImageBuffer& img) { return gamma(img, g); });
    }
    case TransformKind::ShiftRGB: {
      const auto& q = std::get<Triple>(t.params);
      const double dr = q.first.draw(rng);
      const double dg = q.second.draw(rng);
      const double db = q.third.draw(rng);
      return on_image(b, [&](const ImageBuffer& img) { return shift_rgb(img, dr, dg, db); });
    }
    case TransformKind::ShiftHSV: {
      const auto& q = std::get<Triple>(t.params);
      const double dh = q.first.draw(rng);
      const double ds = q.second.draw(rng);
      const double dv = q.third.draw(rng);
      return on_image(b, [&](const ImageBuffer& img) { return shift_hsv(img, dh, ds, dv); });
    }
    case TransformKind::Grayscale:
      return on_image(b, [](const ImageBuffer& img) { return grayscale(img); });
  }
  throw ConfigError("unknown transform kind");
}

struct ApplyResult {
  SampleBundle bundle;
  std::uint64_t seed = 0;     // effective seed, for replay
  std::vector<bool> applied;  // per transform: did the gate pass
};

inline std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

/// Effective seed: seed_override, else the pipeline's seed, else fresh
/// entropy (reported back in ApplyResult::seed).
inline ApplyResult apply_traced(const Pipeline& p, const SampleBundle& b,
                                std::optional<std::uint64_t> seed_override = std::nullopt) {
  validate(p);
  ApplyResult r;
  r.seed = seed_override ? *seed_override : (p.seed ? *p.seed : entropy_seed());
  RngStream rng(r.seed);
  r.bundle = b;
  r.applied.reserve(p.transforms.size());
  for (const auto& t : p.transforms) {
    const double gate = rng.uniform_f64();
    const bool fire = gate < t.p;
    r.applied.push_back(fire);
    if (fire) r.bundle = apply_transform(t, r.bundle, rng);
  }
  return r;
}

inline SampleBundle apply(const Pipeline& p, const SampleBundle& b,
                          std::optional<std::uint64_t> seed_override = std::nullopt) {
  return apply_traced(p, b, seed_override).bundle;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

using nlohmann::json;

struct ParamReader {
  const json& obj;
  TransformKind kind;
  std::vector<std::string> seen{};

  const json* find(const char* key) {
    seen.emplace_back(key);
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const json& required(const char* key) {
    const json* v = find(key);
    if (!v) throw ConfigError(std::string(to_string(kind)) + ": missing required param \"" + key + "\"");
    return *v;
  }

  [[noreturn]] void bad(const char* key, const char* expected) {
    throw ConfigError(std::string(to_string(kind)) + ": param \"" + key + "\" must be " + expected);
  }

  double number(const char* key) {
    const json& v = required(key);
    if (!v.is_number()) bad(key, "a number");
    return v.get<double>();
  }

  int integer(const char* key) {
    const json& v = required(key);
    if (!v.is_number_integer()) bad(key, "an integer");
    const auto i = v.get<long long>();
    if (i < 0 || i > (1LL << 30)) bad(key, "a non-negative integer");
    return static_cast<int>(i);
  }

  Sampled sampled(const char* key) {
    const json& v = required(key);
    if (v.is_number()) return Sampled::fixed(v.get<double>());
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return Sampled::between(v[0].get<double>(), v[1].get<double>());
    bad(key, "a number or a [lo, hi] array");
  }

  Interpolation interpolation() {
    const json* v = find("interpolation");
    if (!v) return Interpolation::bilinear;
    if (*v == "nearest") return Interpolation::nearest;
    if (*v == "bilinear") return Interpolation::bilinear;
    bad("interpolation", "\"nearest\" or \"bilinear\"");
  }

  BorderPolicy border() {
    BorderPolicy b;
    if (const json* v = find("border")) {
      if (*v == "constant")
        b.mode = BorderMode::constant;
      else if (*v == "reflect101")
        b.mode = BorderMode::reflect101;
      else
        bad("border", "\"constant\" or \"reflect101\"");
    }
    const auto sample = [&](const json& x, const char* key) -> std::uint8_t {
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 255) bad(key, "an integer in [0, 255]");
      return static_cast<std::uint8_t>(x.get<int>());
    };
    if (const json* v = find("fill")) {
      if (v->is_array() && v->size() == 3) {
        for (int c = 0; c < 3; ++c) b.fill[c] = sample((*v)[c], "fill");
      } else {
        const auto s = sample(*v, "fill");
        b.fill = {s, s, s};
      }
    }
    if (const json* v = find("mask_fill")) b.mask_fill = sample(*v, "mask_fill");
    return b;
  }

  void finish() {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (std::find(seen.begin(), seen.end(), it.key()) == seen.end())
        throw ConfigError(std::string(to_string(kind)) + ": unknown param \"" + it.key() + "\"");
  }
};

inline TransformParams read_params(TransformKind k, const json& obj) {
  ParamReader r{obj, k};
  TransformParams out;
  switch (k) {
    case TransformKind::HorizontalFlip:
    case TransformKind::VerticalFlip:
    case TransformKind::D4:
    case TransformKind::Grayscale:
      out = NoParams{};
      break;
    case TransformKind::Rotate: {
      RotateParams q;
      q.theta = r.sampled("theta");
      q.interp = r.interpolation();
      q.border = r.border();
      out = q;
      break;
    }
    case TransformKind::ShiftScaleRotate: {
      ShiftScaleRotateParams q;
      q.dx = r.sampled("dx");
      q.dy = r.sampled("dy");
      q.scale = r.sampled("scale");
      q.theta = r.sampled("theta");
      q.interp = r.interpolation();
      q.border = r.border();
      out = q;
      break;
    }
    case TransformKind::RandomCrop:
      out = SizeParams{r.integer("width"), r.integer("height")};
      break;
    case TransformKind::PadToSize: {
      PadParams q;
      q.width = r.integer("width");
      q.height = r.integer("height");
      q.border = r.border();
      out = q;
      break;
    }
    case TransformKind::Resize: {
      ResizeParams q;
      q.width = r.integer("width");
      q.height = r.integer("height");
      q.interp = r.interpolation();
      out = q;
      break;
    }
    case TransformKind::RandomSizedCrop: {
      RandomSizedCropParams q;
      q.min_scale = r.number("min_scale");
      q.max_scale = r.number("max_scale");
      q.width = r.integer("width");
      q.height = r.integer("height");
      q.interp = r.interpolation();
      out = q;
      break;
    }
    case TransformKind::GridDistortion: {
      GridDistortParams q;
      q.num_steps = r.integer("num_steps");
      q.distort_limit = r.number("distort_limit");
      q.interp = r.interpolation();
      q.border = r.border();
      out = q;
      break;
    }
    case TransformKind::ElasticTransform: {
      ElasticParams q{r.number("alpha"), r.number("sigma")};
      q.interp = r.interpolation();
      q.border = r.border();
      out = q;
      break;
    }
    case TransformKind::Brightness:
      out = ScalarParams{r.sampled("beta")};
      break;
    case TransformKind::Contrast:
      out = ScalarParams{r.sampled("c")};
      break;
    case TransformKind::Gamma:
      out = ScalarParams{r.sampled("g")};
      break;
    case TransformKind::ShiftRGB:
      out = Triple{r.sampled("dr"), r.sampled("dg"), r.sampled("db")};
      break;
    case TransformKind::ShiftHSV:
      out = Triple{r.sampled("dh"), r.sampled("ds"), r.sampled("dv")};
      break;
  }
  r.finish();
  return out;
}

inline json write_sampled(const Sampled& s) { return s.range ? json::array({s.lo, s.hi}) : json(s.lo); }

inline const char* interp_name(Interpolation i) { return i == Interpolation::nearest ? "nearest" : "bilinear"; }

inline void write_border(json& o, const BorderPolicy& b) {
  o["border"] = b.mode == BorderMode::constant ? "constant" : "reflect101";
  if (b.fill[0] == b.fill[1] && b.fill[1] == b.fill[2])
    o["fill"] = b.fill[0];
  else
    o["fill"] = json::array({b.fill[0], b.fill[1], b.fill[2]});
  o["mask_fill"] = b.mask_fill;
}

inline json write_params(const TransformSpec& t) {
  json o = json::object();
  std::visit(
      [&](const auto& q) {
        using P = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<P, RotateParams>) {
          o["theta"] = write_sampled(q.theta);
          o["interpolation"] = interp_name(q.interp);
          write_border(o, q.border);
        } else if constexpr (std::is_same_v<P, ShiftScaleRotateParams>) {
          o["dx"] = write_sampled(q.dx);
          o["dy"] = write_sampled(q.dy);
          o["scale"] = write_sampled(q.scale);
          o["theta"] = write_sampled(q.theta);
          o["interpolation"] = interp_name(q.interp);
          write_border(o, q.border);
        } else if constexpr (std::is_same_v<P, SizeParams>) {
          o["width"] = q.width;
          o["height"] = q.height;
        } else if constexpr (std::is_same_v<P, PadParams>) {
          o["width"] = q.width;
          o["height"] = q.height;
          write_border(o, q.border);
        } else if constexpr (std::is_same_v<P, ResizeParams>) {
          o["width"] = q.width;
          o["height"] = q.height;
          o["interpolation"] = interp_name(q.interp);
        } else if constexpr (std::is_same_v<P, RandomSizedCropParams>) {
          o["min_scale"] = q.min_scale;
          o["max_scale"] = q.max_scale;
          o["width"] = q.width;
          o["height"] = q.height;
          o["interpolation"] = interp_name(q.interp);
        } else if constexpr (std::is_same_v<P, GridDistortParams>) {
          o["num_steps"] = q.num_steps;
          o["distort_limit"] = q.distort_limit;
          o["interpolation"] = interp_name(q.interp);
          write_border(o, q.border);
        } else if constexpr (std::is_same_v<P, ElasticParams>) {
          o["alpha"] = q.alpha;
          o["sigma"] = q.sigma;
          o["interpolation"] = interp_name(q.interp);
          write_border(o, q.border);
        } else if constexpr (std::is_same_v<P, ScalarParams>) {
          const char* key = t.kind == TransformKind::Brightness ? "beta" : (t.kind == TransformKind::Contrast ? "c" : "g");
          o[key] = write_sampled(q.value);
        } else if constexpr (std::is_same_v<P, Triple>) {
          const bool rgb = t.kind == TransformKind::ShiftRGB;
          o[rgb ? "dr" : "dh"] = write_sampled(q.first);
          o[rgb ? "dg" : "ds"] = write_sampled(q.second);
          o[rgb ? "db" : "dv"] = write_sampled(q.third);
        }
      },
      t.params);
  return o;
}

}  // namespace detail

inline std::string serialize(const Pipeline& p, int indent = 2) {
  nlohmann::json doc;
  if (p.seed) doc["seed"] = *p.seed;
  doc["transforms"] = nlohmann::json::array();
  for (const auto& t : p.transforms)
    doc["transforms"].push_back({{"name", std::string(to_string(t.kind))}, {"p", t.p}, {"params", detail::write_params(t)}});
  return doc.dump(indent);
}

inline Pipeline deserialize(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "seed" && it.key() != "transforms") throw ConfigError("unknown top-level field \"" + it.key() + "\"");

  Pipeline p;
  if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
      throw ConfigError("\"seed\" must be a non-negative integer");
    p.seed = it->get<std::uint64_t>();
  }
  auto tr = doc.find("transforms");
  if (tr == doc.end()) throw ConfigError("missing required field \"transforms\"");
  if (!tr->is_array()) throw ConfigError("\"transforms\" must be an array");

  for (std::size_t i = 0; i < tr->size(); ++i) {
    const json& e = (*tr)[i];
    const std::string where = "transforms[" + std::to_string(i) + "]";
    if (!e.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = e.begin(); it != e.end(); ++it)
      if (it.key() != "name" && it.key() != "p" && it.key() != "params")
        throw ConfigError(where + ": unknown field \"" + it.key() + "\"");
    auto name = e.find("name");
    if (name == e.end() || !name->is_string()) throw ConfigError(where + ": missing required field \"name\"");
    const auto kind = transform_kind_from_string(name->get<std::string>());
    if (!kind)
      throw ConfigError(where + ": unknown transform \"" + name->get<std::string>() + "\"; valid names: " +
                        valid_transform_names());
    auto prob = e.find("p");
    if (prob == e.end()) throw ConfigError(where + ": missing required field \"p\"");
    if (!prob->is_number()) throw ConfigError(where + ": \"p\" must be a number");
    const double pv = prob->get<double>();
    if (!(pv >= 0.0 && pv <= 1.0)) throw ConfigError(where + ": \"p\" = " + prob->dump() + " is outside [0, 1]");

    static const json kEmpty = json::object();
    auto params = e.find("params");
    const json& pobj = (params == e.end()) ? kEmpty : *params;
    if (!pobj.is_object()) throw ConfigError(where + ": \"params\" must be an object");

    TransformSpec t{*kind, detail::read_params(*kind, pobj), pv};
    validate(t);
    p.transforms.push_back(std::move(t));
  }
  return p;
}

}  // namespace fastaug
