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

#include <gtest/gtest.h>

#include "fastaug/photo.hpp"
#include "test_util.hpp"

namespace fastaug {
namespace {

ImageBuffer pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return ImageBuffer(1, 1, 3, std::vector<std::uint8_t>{r, g, b});
}
ImageBuffer sample(std::uint8_t v) { return ImageBuffer(1, 1, 1, std::vector<std::uint8_t>{v}); }

TEST(Brightness, Examples) {
  RngStream rng(1);
  const auto img = testing::random_image(rng, 9, 9, 3);
  EXPECT_EQ(brightness(img, 1.0), img);
  EXPECT_EQ(brightness(sample(200), 2.0).at(0, 0), 255);
  EXPECT_EQ(brightness(sample(101), 0.5).at(0, 0), 51);
  EXPECT_THROW(brightness(img, -0.1), ParameterError);
}

TEST(Contrast, Examples) {
  RngStream rng(2);
  const auto img = testing::random_image(rng, 9, 9, 3);
  EXPECT_EQ(contrast(img, 1.0), img);
  const auto flat = contrast(img, 0.0);
  for (auto v : flat.data()) ASSERT_EQ(v, 128);
  EXPECT_EQ(contrast(sample(100), 2.0).at(0, 0), 73);
}

TEST(Gamma, Examples) {
  RngStream rng(3);
  const auto img = testing::random_image(rng, 9, 9, 3);
  EXPECT_EQ(gamma(img, 1.0), img);
  for (double g : {0.1, 0.5, 2.0, 7.0}) {
    EXPECT_EQ(gamma(sample(0), g).at(0, 0), 0);
    EXPECT_EQ(gamma(sample(255), g).at(0, 0), 255);
  }
  EXPECT_EQ(gamma(sample(128), 2.0).at(0, 0), 64);
  EXPECT_THROW(gamma(img, 0.0), ParameterError);
}

TEST(Gamma, LutMatchesDirectFormula) {
  for (double g : {0.25, 0.8, 1.2, 2.2, 3.0}) {
    const Lut lut = gamma_lut(g);
    for (int v = 0; v < 256; ++v) {
      const double direct = 255.0 * std::pow(v / 255.0, g);
      ASSERT_EQ(lut[v], clip_round(direct)) << "g=" << g << " v=" << v;
    }
  }
}

TEST(ShiftRgb, Examples) {
  RngStream rng(4);
  const auto img = testing::random_image(rng, 9, 9, 3);
  EXPECT_EQ(shift_rgb(img, 0, 0, 0), img);
  EXPECT_EQ(shift_rgb(pixel(240, 100, 50), 30, -130, 5), pixel(255, 0, 55));
  EXPECT_THROW(shift_rgb(sample(1), 1, 1, 1), UnsupportedTargetError);
}

TEST(Hsv, ReferencePixels) {
  auto red = rgb_to_hsv({255, 0, 0});
  EXPECT_EQ(red.h, 0.0);
  EXPECT_EQ(red.s, 1.0);
  EXPECT_EQ(red.v, 1.0);
  auto gray = rgb_to_hsv({128, 128, 128});
  EXPECT_EQ(gray.s, 0.0);
  EXPECT_DOUBLE_EQ(gray.v, 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(rgb_to_hsv({0, 255, 0}).h, 120.0);
  EXPECT_DOUBLE_EQ(rgb_to_hsv({0, 0, 255}).h, 240.0);
  EXPECT_DOUBLE_EQ(rgb_to_hsv({255, 0, 255}).h, 300.0);
  EXPECT_EQ(hsv_to_rgb({120.0, 1.0, 1.0}), (RgbPixel{0, 255, 0}));
  EXPECT_EQ(rgb_to_hsv({0, 0, 0}).s, 0.0);
}

TEST(Hsv, RoundTripSampled) {
  RngStream rng(5);
  for (int i = 0; i < 200000; ++i) {
    const auto bits = rng.next_u64();
    const RgbPixel p{static_cast<std::uint8_t>(bits), static_cast<std::uint8_t>(bits >> 8),
                     static_cast<std::uint8_t>(bits >> 16)};
    const RgbPixel q = hsv_to_rgb(rgb_to_hsv(p));
    ASSERT_LE(std::abs(p.r - q.r), 1);
    ASSERT_LE(std::abs(p.g - q.g), 1);
    ASSERT_LE(std::abs(p.b - q.b), 1);
  }
}

TEST(ShiftHsv, Examples) {
  RngStream rng(6);
  const auto img = testing::random_image(rng, 16, 16, 3);
  const auto same = shift_hsv(img, 0, 0, 0);
  for (std::size_t i = 0; i < img.data().size(); ++i) ASSERT_LE(std::abs(same.data()[i] - img.data()[i]), 1);
  EXPECT_EQ(shift_hsv(pixel(255, 0, 0), 120, 0, 0), pixel(0, 255, 0));
  EXPECT_EQ(shift_hsv(pixel(255, 0, 0), -120, 0, 0), pixel(0, 0, 255));
  EXPECT_EQ(shift_hsv(pixel(255, 0, 0), 480, 0, 0), pixel(0, 255, 0));
  for (double dh : {-200.0, 0.0, 45.0, 359.0})
    for (double ds : {-1.0, -0.3, 0.0}) EXPECT_EQ(shift_hsv(pixel(77, 77, 77), dh, ds, 0), pixel(77, 77, 77));
  EXPECT_EQ(shift_hsv(pixel(10, 20, 30), 0, 0, 1.0), shift_hsv(pixel(10, 20, 30), 0, 0, 5.0));
  EXPECT_THROW(shift_hsv(sample(1), 1, 0, 0), UnsupportedTargetError);
}

TEST(Grayscale, Examples) {
  EXPECT_EQ(grayscale(pixel(255, 0, 0)), pixel(76, 76, 76));
  for (int v = 0; v < 256; ++v) {
    const auto g = static_cast<std::uint8_t>(v);
    ASSERT_EQ(grayscale(pixel(g, g, g)), pixel(g, g, g));
  }
  RngStream rng(7);
  const auto img = testing::random_image(rng, 12, 12, 3);
  EXPECT_EQ(grayscale(grayscale(img)), grayscale(img));
  EXPECT_THROW(grayscale(sample(3)), UnsupportedTargetError);
}

TEST(PhotoProperties, MonotoneInInput) {
  RngStream rng(8);
  for (int i = 0; i < 50; ++i) {
    const double beta = rng.uniform(0, 3), c = rng.uniform(0, 3), g = rng.uniform(0.05, 5);
    const Lut b = make_lut([&](double v) { return clip_round(v * beta); });
    const Lut ct = make_lut([&](double v) { return clip_round(127.5 + (v - 127.5) * c); });
    const Lut gm = gamma_lut(g);
    ImageBuffer ramp(1, 256, 1);
    for (int v = 0; v < 256; ++v) ramp.at(0, v) = static_cast<std::uint8_t>(v);
    const auto ob = brightness(ramp, beta), oc = contrast(ramp, c), og = gamma(ramp, g);
    for (int v = 1; v < 256; ++v) {
      ASSERT_LE(ob.at(0, v - 1), ob.at(0, v));
      ASSERT_LE(oc.at(0, v - 1), oc.at(0, v));
      ASSERT_LE(og.at(0, v - 1), og.at(0, v));
      ASSERT_EQ(ob.at(0, v), b[v]);
      ASSERT_EQ(oc.at(0, v), ct[v]);
      ASSERT_EQ(og.at(0, v), gm[v]);
    }
  }
}

TEST(PhotoProperties, BundleTargetsUntouched) {
  RngStream rng(9);
  const auto b = testing::random_bundle(rng, 10, 10, 2, 3);
  const auto out = on_image(b, [](const ImageBuffer& im) { return shift_hsv(im, 30, 0.2, -0.1); });
  EXPECT_EQ(out.masks, b.masks);
  EXPECT_EQ(out.boxes, b.boxes);
  EXPECT_NE(out.image, b.image);
}

}  // namespace
}  // namespace fastaug
