// Copyright 2026 The lanepipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lanepipe/synth.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lanepipe::synth {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("LANEPIPE_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw std::invalid_argument("LANEPIPE_SEED must be an unsigned integer");
    }
  }
  return fallback;
}

RgbImage road_image(int width, int height, std::span<const int> boundaries, const RoadStyle& style) {
  RgbImage img(width, height, style.asphalt);
  const int half = style.stripe_width / 2;
  for (int b : boundaries) {
    for (int c = b - half; c < b - half + style.stripe_width; ++c) {
      if (c < 0 || c >= width) continue;
      for (int r = 0; r < height; ++r) img.at(r, c) = style.paint;
    }
  }
  return img;
}

std::vector<std::uint8_t> painted_binary(const FrameGeometry& g, std::span<const int> boundaries,
                                         int stripe_width) {
  std::vector<std::uint8_t> frame(g.pixel_count(), 0);
  const int half = stripe_width / 2;
  for (int b : boundaries) {
    for (int c = b - half; c < b - half + stripe_width; ++c) {
      if (c < 0 || c >= g.width) continue;
      for (int r = 0; r < g.height; ++r) frame[static_cast<std::size_t>(r) * g.width + c] = 255;
    }
  }
  return frame;
}

void salt_and_pepper(RgbImage& image, double fraction, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& p : image.pixels) {
    const double x = u(rng);
    if (x < fraction / 2) {
      p = {0, 0, 0};
    } else if (x < fraction) {
      p = {255, 255, 255};
    }
  }
}

std::vector<int> random_boundaries(std::mt19937_64& rng, int width, int center_column, int min_spacing,
                                   int margin, int max_count, int center_clearance) {
  std::uniform_int_distribution<int> count_dist(2, max_count);
  std::uniform_int_distribution<int> col_dist(margin, width - 1 - margin);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int k = count_dist(rng);
    std::vector<int> cols;
    for (int tries = 0; tries < 1000 && static_cast<int>(cols.size()) < k; ++tries) {
      const int c = col_dist(rng);
      if (std::abs(c - center_column) < center_clearance) continue;
      const bool far = std::all_of(cols.begin(), cols.end(),
                                   [&](int o) { return std::abs(o - c) >= min_spacing; });
      if (far) cols.push_back(c);
    }
    if (static_cast<int>(cols.size()) != k) continue;
    std::sort(cols.begin(), cols.end());
    if (cols.front() <= center_column && center_column < cols.back()) return cols;
  }
  throw std::runtime_error("could not place " + std::to_string(max_count) + " boundaries");
}

}  // namespace lanepipe::synth
