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

#ifndef LANEPIPE_SYNTH_HPP_
#define LANEPIPE_SYNTH_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lanepipe/image.hpp"
#include "lanepipe/lane_decision.hpp"

namespace lanepipe::synth {

// Seed from LANEPIPE_SEED when set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 20260418);

struct RoadStyle {
  // Dark enough that the zero-padded frame border stays under the default
  // Sobel threshold.
  PixelRgb asphalt{20, 20, 20};
  PixelRgb paint{255, 255, 255};
  int stripe_width = 3;
};

// Vertical stripes centered on `boundaries`, full frame height.
RgbImage road_image(int width, int height, std::span<const int> boundaries, const RoadStyle& style = {});

// Binary frame with white vertical stripes painted over the decision band.
std::vector<std::uint8_t> painted_binary(const FrameGeometry& g, std::span<const int> boundaries,
                                         int stripe_width = 3);

// Replaces `fraction` of the pixels with black or white, half each.
void salt_and_pepper(RgbImage& image, double fraction, std::mt19937_64& rng);

// 2..max_count strictly increasing columns, at least `min_spacing` apart,
// `margin` away from both frame edges, not within `center_clearance` of
// the center column, with the center inside [first, last).
std::vector<int> random_boundaries(std::mt19937_64& rng, int width, int center_column, int min_spacing,
                                   int margin = 8, int max_count = 6, int center_clearance = 4);

}  // namespace lanepipe::synth

#endif  // LANEPIPE_SYNTH_HPP_
