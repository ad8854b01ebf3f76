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

#include <set>

#include "fastaug/geom.hpp"
#include "test_util.hpp"

namespace fastaug {
namespace {

using testing::random_bundle;
using testing::random_image;

ImageBuffer row_image(std::initializer_list<std::uint8_t> values) {
  return ImageBuffer(1, static_cast<int>(values.size()), 1, std::vector<std::uint8_t>(values));
}

void expect_box_near(const BoundingBox& b, double x0, double y0, double x1, double y1, double tol = 1e-12) {
  EXPECT_NEAR(b.x_min, x0, tol);
  EXPECT_NEAR(b.y_min, y0, tol);
  EXPECT_NEAR(b.x_max, x1, tol);
  EXPECT_NEAR(b.y_max, y1, tol);
}

// ---------------------------------------------------------------------------

TEST(Reflect101, MirrorsWithoutRepeatingEdge) {
  EXPECT_EQ(reflect101(-1, 5), 1);
  EXPECT_EQ(reflect101(5, 5), 3);
  EXPECT_EQ(reflect101(-2, 5), 2);
  EXPECT_EQ(reflect101(0, 1), 0);
  EXPECT_EQ(reflect101(-7, 1), 0);
  for (int n = 1; n < 7; ++n)
    for (int i = -30; i < 30; ++i) ASSERT_EQ(reflect101(i, n), testing::reflect101_oracle(i, n)) << i << " " << n;
}

TEST(AffineMap, ComposeAndInverse) {
  const AffineMap a{2, 0, 1, 0, 3, -1};
  const AffineMap b{0, -1, 4, 1, 0, 2};
  const auto ab = AffineMap::compose(a, b);
  const auto p = ab.apply(1.5, -2.0);
  const auto ap = a.apply(1.5, -2.0);
  const auto q = b.apply(ap.x, ap.y);
  EXPECT_DOUBLE_EQ(p.x, q.x);
  EXPECT_DOUBLE_EQ(p.y, q.y);

  const auto inv = a.inverse();
  ASSERT_TRUE(inv);
  const auto id = AffineMap::compose(a, *inv);
  EXPECT_NEAR(id.apply(3, 4).x, 3, 1e-12);
  EXPECT_NEAR(id.apply(3, 4).y, 4, 1e-12);
  EXPECT_FALSE((AffineMap{1, 2, 0, 2, 4, 0}.inverse()));
  EXPECT_EQ(AffineMap::identity().apply(7, 9).x, 7);
}

TEST(AffineMap, ForwardAndInverseAgree) {
  RngStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto m = shift_scale_rotate_maps(40, 30, rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                                           rng.uniform(0.5, 2.0), rng.uniform(-180, 180));
    const double x = rng.uniform(0, 40), y = rng.uniform(0, 30);
    const auto f = m.forward.apply(x, y);
    const auto back = m.inverse.apply(f.x, f.y);
    ASSERT_NEAR(back.x, x, 1e-9);
    ASSERT_NEAR(back.y, y, 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Flips

TEST(HFlip, Examples) {
  EXPECT_EQ(hflip(row_image({10, 20})), row_image({20, 10}));
  expect_box_near(hflip(BoundingBox{0.1, 0.2, 0.4, 0.5}), 0.6, 0.2, 0.9, 0.5);

  ImageBuffer rgb(1, 2, 3, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(hflip(rgb), ImageBuffer(1, 2, 3, std::vector<std::uint8_t>{4, 5, 6, 1, 2, 3}));
}

TEST(VFlip, Examples) {
  const ImageBuffer col(2, 1, 1, std::vector<std::uint8_t>{10, 20});
  EXPECT_EQ(vflip(col), ImageBuffer(2, 1, 1, std::vector<std::uint8_t>{20, 10}));
  expect_box_near(vflip(BoundingBox{0.1, 0.2, 0.4, 0.5}), 0.1, 0.5, 0.4, 0.8);
}

TEST(Flips, AreInvolutionsOnBundles) {
  RngStream rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto b = random_bundle(rng, 32, 32, 2, 3);
    EXPECT_EQ(hflip(hflip(b)).image, b.image);
    EXPECT_EQ(hflip(hflip(b)).masks, b.masks);
    EXPECT_EQ(vflip(vflip(b)).image, b.image);
    EXPECT_EQ(vflip(vflip(b)).masks, b.masks);
    for (std::size_t k = 0; k < b.boxes.size(); ++k) {
      const auto& o = b.boxes[k];
      expect_box_near(hflip(hflip(b)).boxes[k], o.x_min, o.y_min, o.x_max, o.y_max, 1e-15);
      expect_box_near(vflip(vflip(b)).boxes[k], o.x_min, o.y_min, o.x_max, o.y_max, 1e-15);
    }
  }
}

// ---------------------------------------------------------------------------
// Quarter turns and D4

TEST(Rot90, OneByTwo) {
  const auto out = rot90(row_image({1, 2}), 1);
  EXPECT_EQ(out, ImageBuffer(2, 1, 1, std::vector<std::uint8_t>{2, 1}));
}

TEST(Rot90, MatchesIndexOracleAndGroupLaw) {
  RngStream rng(5);
  for (int i = 0; i < 20; ++i) {
    const int h = 1 + static_cast<int>(rng.uniform_int(9));
    const int w = 1 + static_cast<int>(rng.uniform_int(9));
    const auto img = random_image(rng, h, w, 3);
    EXPECT_EQ(rot90(img, 0), img);
    EXPECT_EQ(rot90(img, 1), testing::rot90_oracle(img));
    EXPECT_EQ(rot90(img, 2), testing::rot90_oracle(testing::rot90_oracle(img)));
    EXPECT_EQ(rot90(img, 3), rot90(rot90(rot90(img, 1), 1), 1));
    EXPECT_EQ(rot90(img, -1), rot90(img, 3));
    EXPECT_EQ(rot90(rot90(rot90(rot90(img, 1), 1), 1), 1), img);
  }
}

TEST(Rot90, BoxCorners) {
  expect_box_near(rot90(BoundingBox{0.0, 0.0, 0.5, 0.25}, 1), 0.0, 0.5, 0.25, 1.0);
  RngStream rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto b = testing::random_box(rng);
    auto r = b;
    for (int k = 0; k < 4; ++k) r = rot90(r, 1);
    expect_box_near(r, b.x_min, b.y_min, b.x_max, b.y_max, 1e-15);
    const auto r3 = rot90(rot90(rot90(b, 1), 1), 1);
    expect_box_near(rot90(b, 3), r3.x_min, r3.y_min, r3.x_max, r3.y_max, 1e-15);
  }
}

TEST(Rot90, BoxFollowsPixels) {
  // A box covering exactly one pixel must land on the pixel that moved.
  ImageBuffer img(4, 6, 1);
  img.at(1, 4) = 255;
  SampleBundle b(img, {}, {BoundingBox{4.0 / 6, 1.0 / 4, 5.0 / 6, 2.0 / 4}});
  for (int k = 0; k < 4; ++k) {
    const auto out = rot90(b, k);
    const auto& bx = out.boxes[0];
    const int x = static_cast<int>(std::lround(bx.x_min * out.image.width()));
    const int y = static_cast<int>(std::lround(bx.y_min * out.image.height()));
    EXPECT_EQ(out.image.at(y, x), 255) << "k=" << k;
  }
}

TEST(D4, ElementsAndCayleyTable) {
  EXPECT_EQ(d4(row_image({1, 2}), 4), row_image({2, 1}));
  EXPECT_THROW(d4(row_image({1}), 8), ParameterError);

  RngStream rng(9);
  const auto img = random_image(rng, 8, 8, 3);
  EXPECT_EQ(d4(img, 0), img);
  std::vector<ImageBuffer> elems;
  for (int e = 0; e < 8; ++e) elems.push_back(d4(img, e));
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) ASSERT_NE(elems[i], elems[j]) << "random image should separate elements";

  for (int i = 0; i < 8; ++i) {
    bool has_inverse = false;
    for (int j = 0; j < 8; ++j) {
      const auto composed = d4(d4(img, i), j);
      int hits = 0;
      for (int k = 0; k < 8; ++k) hits += composed == elems[k];
      EXPECT_EQ(hits, 1) << "i=" << i << " j=" << j;
      has_inverse |= composed == img;
    }
    EXPECT_TRUE(has_inverse) << "element " << i;
  }
}

// ---------------------------------------------------------------------------
// Affine ops

TEST(Rotate, ZeroIsIdentity) {
  RngStream rng(13);
  const auto b = random_bundle(rng, 17, 23, 1, 3);
  for (auto interp : {Interpolation::nearest, Interpolation::bilinear}) {
    const auto out = rotate(b, 0.0, interp);
    EXPECT_EQ(out.image, b.image);
    EXPECT_EQ(out.masks, b.masks);
    ASSERT_EQ(out.boxes.size(), b.boxes.size());
    for (std::size_t i = 0; i < b.boxes.size(); ++i)
      expect_box_near(out.boxes[i], b.boxes[i].x_min, b.boxes[i].y_min, b.boxes[i].x_max, b.boxes[i].y_max);
  }
}

TEST(Rotate, NinetyEqualsRot90OnSquare) {
  RngStream rng(14);
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform_int(20));
    const auto b = random_bundle(rng, n, n, 1, 2);
    const auto r = rot90(b, 1);
    for (auto interp : {Interpolation::nearest, Interpolation::bilinear}) {
      const auto out = rotate(b, 90.0, interp);
      EXPECT_EQ(out.image, r.image);
      EXPECT_EQ(out.masks, r.masks);
      for (std::size_t k = 0; k < r.boxes.size(); ++k)
        expect_box_near(out.boxes[k], r.boxes[k].x_min, r.boxes[k].y_min, r.boxes[k].x_max, r.boxes[k].y_max, 1e-12);
    }
  }
}

TEST(Rotate, CentrePixelIsFixedForOddSizes) {
  RngStream rng(15);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + 2 * static_cast<int>(rng.uniform_int(10));
    const auto img = random_image(rng, n, n, 3);
    const auto out = rotate(img, rng.uniform(-360, 360), Interpolation::nearest);
    for (int c = 0; c < 3; ++c) ASSERT_EQ(out.at(n / 2, n / 2, c), img.at(n / 2, n / 2, c));
  }
}

TEST(Rotate, RoundTripBoundOnSmoothImage) {
  const auto img = testing::smooth_image(64, 64);
  RngStream rng(16);
  for (int i = 0; i < 10; ++i) {
    const double t = rng.uniform(-60, 60);
    const auto back = rotate(rotate(img, t, Interpolation::bilinear), -t, Interpolation::bilinear);
    int worst = 0;
    for (int y = 16; y < 48; ++y)
      for (int x = 16; x < 48; ++x)
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(back.at(y, x, c) - img.at(y, x, c)));
    EXPECT_LE(worst, 2) << "theta=" << t;
  }
}

TEST(Rotate, ConstantAndReflectBorders) {
  ImageBuffer img(5, 5, 1, std::uint8_t{200});
  BorderPolicy border;
  border.fill = {7, 7, 7};
  const auto out = rotate(img, 45.0, Interpolation::nearest, border);
  EXPECT_EQ(out.at(0, 0), 7);
  EXPECT_EQ(out.at(2, 2), 200);
  border.mode = BorderMode::reflect101;
  const auto refl = rotate(img, 45.0, Interpolation::nearest, border);
  for (auto v : refl.data()) ASSERT_EQ(v, 200);
}

TEST(ShiftScaleRotate, Reductions) {
  RngStream rng(17);
  const auto b = random_bundle(rng, 12, 15, 1, 2);
  const auto id = shift_scale_rotate(b, 0, 0, 1, 0, Interpolation::bilinear);
  EXPECT_EQ(id.image, b.image);
  EXPECT_EQ(id.masks, b.masks);
  for (double t : {0.0, 30.0, 90.0})
    for (auto interp : {Interpolation::nearest, Interpolation::bilinear}) {
      const auto a = shift_scale_rotate(b, 0, 0, 1, t, interp);
      const auto r = rotate(b, t, interp);
      EXPECT_EQ(a.image, r.image);
      EXPECT_EQ(a.masks, r.masks);
      EXPECT_EQ(a.boxes, r.boxes);
    }
  EXPECT_THROW(shift_scale_rotate(b, 0, 0, 0.0, 0), ParameterError);
  EXPECT_THROW(shift_scale_rotate(b.image, 0, 0, -1.0, 0), ParameterError);
}

TEST(ShiftScaleRotate, QuarterWidthShift) {
  ImageBuffer img(2, 4, 1, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6, 7, 8});
  for (auto interp : {Interpolation::nearest, Interpolation::bilinear}) {
    const auto out = shift_scale_rotate(img, 0.25, 0, 1, 0, interp);
    for (int y = 0; y < 2; ++y) {
      EXPECT_EQ(out.at(y, 0), 0);
      for (int x = 1; x < 4; ++x) EXPECT_EQ(out.at(y, x), img.at(y, x - 1));
    }
  }
}

TEST(ShiftScaleRotate, BoxEnvelopeMatchesCornerOracle) {
  RngStream rng(18);
  for (int i = 0; i < 500; ++i) {
    const int w = 8 + static_cast<int>(rng.uniform_int(120));
    const int h = 8 + static_cast<int>(rng.uniform_int(120));
    const BoundingBox box = testing::random_box(rng, i);
    const double dx = rng.uniform(-0.3, 0.3), dy = rng.uniform(-0.3, 0.3);
    const double scale = rng.uniform(0.5, 1.8), theta = rng.uniform(-180, 180);
    const auto maps = shift_scale_rotate_maps(w, h, dx, dy, scale, theta);
    const auto got = map_boxes_affine({box}, maps.forward, w, h, w, h);
    const auto want = testing::ssr_box_oracle(box, w, h, dx, dy, scale, theta);
    ASSERT_EQ(got.size(), want ? 1u : 0u);
    if (want) expect_box_near(got[0], want->x_min, want->y_min, want->x_max, want->y_max, 1e-9);
  }
}

TEST(ShiftScaleRotate, MinAreaDropsSmallBoxes) {
  ImageBuffer img(100, 100, 1);
  SampleBundle b(img, {}, {BoundingBox{0.1, 0.1, 0.12, 0.12, 0}, BoundingBox{0.2, 0.2, 0.6, 0.6, 1}});
  const auto out = rotate(b, 10.0, Interpolation::nearest, BorderPolicy{}, 20.0);
  ASSERT_EQ(out.boxes.size(), 1u);
  EXPECT_EQ(out.boxes[0].label, 1);
  // Shifted fully out of frame.
  const auto gone = shift_scale_rotate(b, 2.0, 0, 1, 0);
  EXPECT_TRUE(gone.boxes.empty());
}

// ---------------------------------------------------------------------------
// Crop / pad / resize

TEST(Crop, Examples) {
  RngStream rng(19);
  const auto b = random_bundle(rng, 9, 7, 1, 2);
  const auto full = crop(b, {0, 0, 7, 9});
  EXPECT_EQ(full.image, b.image);
  EXPECT_EQ(full.masks, b.masks);
  EXPECT_EQ(crop(row_image({1, 2}), {1, 0, 1, 1}), row_image({2}));

  SampleBundle sq(ImageBuffer(100, 100, 3), {}, {BoundingBox{0, 0, 0.5, 0.5, 4}});
  const auto c = crop(sq, {25, 25, 50, 50});
  ASSERT_EQ(c.boxes.size(), 1u);
  expect_box_near(c.boxes[0], 0.0, 0.0, 0.5, 0.5);
  EXPECT_EQ(c.boxes[0].label, 4);

  SampleBundle outside(ImageBuffer(100, 100, 3), {}, {BoundingBox{0, 0, 0.1, 0.1, 1}});
  EXPECT_TRUE(crop(outside, {50, 50, 50, 50}).boxes.empty());
}

TEST(Crop, OutOfBoundsIsAnError) {
  const ImageBuffer img(4, 4, 3);
  EXPECT_THROW(crop(img, {1, 0, 4, 4}), ParameterError);
  EXPECT_THROW(crop(img, {-1, 0, 2, 2}), ParameterError);
  EXPECT_THROW(crop(img, {0, 0, 0, 2}), ParameterError);
  EXPECT_THROW(crop(img, {0, 3, 2, 2}), ParameterError);
}

TEST(RandomCrop, IdentityWhenSizesMatch) {
  RngStream seeds(20);
  const auto b = random_bundle(seeds, 6, 5, 1, 1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    RngStream rng(s);
    EXPECT_EQ(random_crop(b, 5, 6, rng).image, b.image);
  }
}

TEST(RandomCrop, DrawsExactlyTwoValues) {
  RngStream a(77), b(77);
  random_crop_window(10, 10, 3, 3, a);
  b.next_u64();
  b.next_u64();
  EXPECT_EQ(a.state(), b.state());
  RngStream c(77);
  const auto win = random_crop_window(10, 12, 3, 4, c);
  RngStream d(77);
  EXPECT_EQ(win.x0, static_cast<int>(d.uniform_int(8)));
  EXPECT_EQ(win.y0, static_cast<int>(d.uniform_int(9)));
}

TEST(RandomCrop, DeterministicAndCovering) {
  RngStream g(21);
  const auto img = random_image(g, 8, 8, 1);
  RngStream r1(5), r2(5);
  EXPECT_EQ(random_crop(img, 4, 4, r1), random_crop(img, 4, 4, r2));

  std::set<int> xs, ys;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    RngStream rng(s);
    const auto w = random_crop_window(8, 8, 4, 4, rng);
    xs.insert(w.x0);
    ys.insert(w.y0);
  }
  EXPECT_EQ(xs, (std::set<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(ys, (std::set<int>{0, 1, 2, 3, 4}));
  RngStream rng(0);
  EXPECT_THROW(random_crop(img, 9, 4, rng), ParameterError);
}

TEST(PadToSize, Examples) {
  RngStream rng(22);
  const auto b = random_bundle(rng, 5, 5, 1, 1);
  EXPECT_EQ(pad_to_size(b, 5, 5).image, b.image);

  const auto one = pad_to_size(ImageBuffer(1, 1, 1, std::uint8_t{9}), 3, 3);
  EXPECT_EQ(one, ImageBuffer(3, 3, 1, std::vector<std::uint8_t>{0, 0, 0, 0, 9, 0, 0, 0, 0}));

  SampleBundle two(ImageBuffer(2, 2, 3), {MaskBuffer(2, 2, std::uint8_t{1})}, {BoundingBox{0, 0, 1, 1, 0}});
  BorderPolicy border;
  border.mask_fill = 3;
  const auto padded = pad_to_size(two, 4, 4, border);
  expect_box_near(padded.boxes[0], 0.25, 0.25, 0.75, 0.75);
  EXPECT_EQ(padded.masks[0].at(0, 0), 3);
  EXPECT_EQ(padded.masks[0].at(1, 1), 1);

  EXPECT_THROW(pad_to_size(b, 4, 6), ParameterError);
}

TEST(PadToSize, OffsetsAndReflect) {
  // 1x3 row padded to 6 wide: left = floor(3/2) = 1.
  const auto out = pad_to_size(row_image({1, 2, 3}), 6, 1, BorderPolicy{BorderMode::reflect101, {}, 0});
  EXPECT_EQ(out, row_image({2, 1, 2, 3, 2, 1}));
  BorderPolicy fill;
  fill.fill = {5, 6, 7};
  const auto rgb = pad_to_size(ImageBuffer(1, 1, 3, std::uint8_t{1}), 2, 1, fill);
  EXPECT_EQ(rgb, ImageBuffer(1, 2, 3, std::vector<std::uint8_t>{1, 1, 1, 5, 6, 7}));
}

TEST(Resize, Examples) {
  RngStream rng(23);
  const auto b = random_bundle(rng, 7, 9, 1, 2);
  for (auto interp : {Interpolation::nearest, Interpolation::bilinear}) {
    const auto same = resize(b, 9, 7, interp);
    EXPECT_EQ(same.image, b.image);
    EXPECT_EQ(same.masks, b.masks);
  }
  // 2x2 -> 1x1: x_s = y_s = 0.5 rounds half up to index 1.
  const ImageBuffer sq(2, 2, 1, std::vector<std::uint8_t>{10, 20, 30, 40});
  EXPECT_EQ(resize(sq, 1, 1, Interpolation::nearest).at(0, 0), 40);
  EXPECT_EQ(resize(sq, 1, 1, Interpolation::bilinear).at(0, 0), 25);

  const auto scaled = resize(b, 31, 4, Interpolation::bilinear);
  EXPECT_EQ(scaled.boxes, b.boxes);
  EXPECT_EQ(scaled.image.width(), 31);
  EXPECT_EQ(scaled.masks[0].height(), 4);
  EXPECT_THROW(resize(b, 0, 3), ParameterError);
}

TEST(Resize, UpsamplesLinearRamp) {
  // Doubling a ramp with half-pixel centres: interior samples at quarter offsets.
  const auto out = resize(row_image({0, 100, 200}), 6, 1, Interpolation::bilinear);
  EXPECT_EQ(out, row_image({0, 25, 75, 125, 175, 200}));
}

TEST(RandomSizedCrop, FullScaleIsResize) {
  RngStream g(24);
  const auto b = random_bundle(g, 16, 16, 1, 1);
  RngStream rng(1);
  const auto out = random_sized_crop(b, 1.0, 1.0, 8, 8, rng);
  EXPECT_EQ(out.image, resize(b, 8, 8).image);
  EXPECT_EQ(out.masks, resize(b, 8, 8).masks);
}

TEST(RandomSizedCrop, DrawOrderAndDeterminism) {
  RngStream a(31), b(31);
  const auto win = random_sized_crop_window(40, 30, 0.2, 0.9, a);
  const double s = b.uniform(0.2, 0.9);
  const int side = static_cast<int>(std::floor(std::sqrt(s) * 30 + 0.5));
  EXPECT_EQ(win.width, side);
  EXPECT_EQ(win.x0, static_cast<int>(b.uniform_int(40 - side + 1)));
  EXPECT_EQ(win.y0, static_cast<int>(b.uniform_int(30 - side + 1)));
  EXPECT_EQ(a.state(), b.state());

  RngStream g(25);
  const auto img = random_bundle(g, 20, 30, 1, 2);
  RngStream r1(9), r2(9);
  EXPECT_EQ(random_sized_crop(img, 0.1, 0.8, 12, 10, r1), random_sized_crop(img, 0.1, 0.8, 12, 10, r2));
  RngStream r3(0);
  EXPECT_THROW(random_sized_crop(img, 0.0, 0.5, 4, 4, r3), ParameterError);
  EXPECT_THROW(random_sized_crop(img, 0.6, 0.5, 4, 4, r3), ParameterError);
}

TEST(RandomSizedCrop, OutputDimsFuzz) {
  RngStream rng(26);
  for (int i = 0; i < 1000; ++i) {
    const int h = 1 + static_cast<int>(rng.uniform_int(40));
    const int w = 1 + static_cast<int>(rng.uniform_int(40));
    const int ow = 1 + static_cast<int>(rng.uniform_int(30));
    const int oh = 1 + static_cast<int>(rng.uniform_int(30));
    const double lo = rng.uniform(0.01, 1.0);
    const double hi = rng.uniform(lo, 1.0);
    const auto b = random_bundle(rng, h, w, 1, 1, 1);
    const auto out = random_sized_crop(b, lo, hi, ow, oh, rng);
    ASSERT_EQ(out.image.width(), ow);
    ASSERT_EQ(out.image.height(), oh);
    ASSERT_EQ(out.masks[0].width(), ow);
    ASSERT_TRUE(validate_bundle(out).empty());
  }
}

// ---------------------------------------------------------------------------
// Cross-op properties

TEST(GeomProperties, MaskImageConsistencyAndBoxContainment) {
  RngStream rng(27);
  BorderPolicy border;  // fill[0] == mask_fill == 0
  for (int i = 0; i < 40; ++i) {
    const int h = 3 + static_cast<int>(rng.uniform_int(20));
    const int w = 3 + static_cast<int>(rng.uniform_int(20));
    auto b = testing::mask_mirrored_bundle(rng, h, w);
    for (int k = 0; k < 3; ++k) b.boxes.push_back(testing::random_box(rng, k));
    std::vector<SampleBundle> outs;
    outs.push_back(hflip(b));
    outs.push_back(vflip(b));
    outs.push_back(rot90(b, 1 + static_cast<int>(rng.uniform_int(3))));
    outs.push_back(d4(b, static_cast<int>(rng.uniform_int(8))));
    outs.push_back(rotate(b, rng.uniform(-180, 180), Interpolation::nearest, border));
    outs.push_back(shift_scale_rotate(b, rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(0.6, 1.5),
                                      rng.uniform(-180, 180), Interpolation::nearest, border));
    outs.push_back(crop(b, {1, 1, w - 2, h - 2}));
    outs.push_back(random_crop(b, w / 2 + 1, h / 2 + 1, rng));
    outs.push_back(pad_to_size(b, w + 3, h + 4, border));
    outs.push_back(resize(b, 2 * w + 1, h / 2 + 1, Interpolation::nearest));
    outs.push_back(random_sized_crop(b, 0.2, 1.0, 9, 11, rng, Interpolation::nearest));
    for (std::size_t k = 0; k < outs.size(); ++k) {
      ASSERT_TRUE(testing::channel0_equals_mask(outs[k])) << "op " << k;
      for (const auto& bx : outs[k].boxes) ASSERT_TRUE(bx.valid()) << "op " << k;
      ASSERT_TRUE(validate_bundle(outs[k]).empty()) << "op " << k;
    }
  }
}

}  // namespace
}  // namespace fastaug
