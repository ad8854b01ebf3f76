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

// Applies a JSON pipeline to one image and writes the result.
//
//   augment_sample CONFIG OUT.ppm [IN.ppm|IN.pgm] [SEED]
//
// Without an input image a 256x256 test pattern is used, with a mask that
// marks its left half. The mask is written next to the output as OUT.mask.pgm.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fastaug/fastaug.hpp"

namespace {

fastaug::SampleBundle test_pattern() {
  fastaug::ImageBuffer img(256, 256, 3);
  fastaug::MaskBuffer mask(256, 256);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x) {
      img.at(y, x, 0) = static_cast<std::uint8_t>(x);
      img.at(y, x, 1) = static_cast<std::uint8_t>(y);
      img.at(y, x, 2) = static_cast<std::uint8_t>(((x / 32) + (y / 32)) % 2 ? 220 : 40);
      mask.at(y, x) = x < 128 ? 1 : 0;
    }
  return fastaug::SampleBundle(std::move(img), {std::move(mask)}, {fastaug::BoundingBox{0.25, 0.25, 0.75, 0.5, 1}});
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3 || argc > 5) {
    std::cerr << "usage: augment_sample CONFIG OUT.ppm [IN.ppm|IN.pgm] [SEED]\n";
    return 2;
  }
  try {
    std::ifstream f(argv[1]);
    if (!f) throw fastaug::Error(std::string("cannot open ") + argv[1]);
    std::stringstream text;
    text << f.rdbuf();
    const auto pipeline = fastaug::deserialize(text.str());

    fastaug::SampleBundle input = argc >= 4 ? fastaug::SampleBundle(fastaug::imgio::load_image(argv[3])) : test_pattern();
    // Free-form warps cannot carry boxes; drop the demo box for such pipelines.
    for (const auto& t : pipeline.transforms)
      if (t.kind == fastaug::TransformKind::GridDistortion || t.kind == fastaug::TransformKind::ElasticTransform)
        input.boxes.clear();
    std::optional<std::uint64_t> seed;
    if (argc == 5) seed = std::strtoull(argv[4], nullptr, 10);

    const auto result = fastaug::apply_traced(pipeline, input, seed);
    const std::string out = argv[2];
    fastaug::imgio::save_pnm(out, result.bundle.image);
    if (!result.bundle.masks.empty()) fastaug::imgio::save_pnm(out + ".mask.pgm", result.bundle.masks[0]);

    std::cout << "seed " << result.seed << "\n";
    for (std::size_t i = 0; i < pipeline.transforms.size(); ++i)
      std::cout << "  " << fastaug::to_string(pipeline.transforms[i].kind)
                << (result.applied[i] ? "  applied" : "  skipped") << "\n";
    for (const auto& b : result.bundle.boxes)
      std::cout << "  box " << b.label << ": " << b.x_min << " " << b.y_min << " " << b.x_max << " " << b.y_max << "\n";
    std::cout << "wrote " << out << " (" << result.bundle.image.width() << "x" << result.bundle.image.height() << ")\n";
  } catch (const fastaug::Error& e) {
    std::cerr << "augment_sample: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
