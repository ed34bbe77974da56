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

#ifndef LANEPIPE_TESTS_SUPPORT_HPP_
#define LANEPIPE_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "lanepipe/image.hpp"
#include "lanepipe/synth.hpp"
#include "lanepipe/window_engine.hpp"

namespace lanepipe::testing {

// Every randomized test draws from LANEPIPE_SEED, offset per test.
inline std::mt19937_64 rng_for(std::uint64_t salt) {
  return std::mt19937_64(synth::seed_from_env() ^ (salt * 0x9E3779B97F4A7C15ull));
}

inline GrayImage random_gray(std::mt19937_64& rng, int w, int h) {
  GrayImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(d(rng));
  return img;
}

inline RgbImage random_rgb(std::mt19937_64& rng, int w, int h) {
  RgbImage img(w, h);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& p : img.pixels) {
    p = {static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
         static_cast<std::uint8_t>(d(rng))};
  }
  return img;
}

// Neighborhood by direct index arithmetic.
inline Window3x3 window_at(const GrayImage& img, int row, int col) {
  Window3x3 w;
  w.row = row;
  w.col = col;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r = row - 1 + i;
      const int c = col - 1 + j;
      const bool inside = r >= 0 && r < img.height && c >= 0 && c < img.width;
      w.taps[static_cast<std::size_t>(3 * i + j)] = inside ? img.at(r, c) : 0;
    }
  }
  return w;
}

// Feeds a frame and drains the engine; every window in emission order.
inline std::vector<Window3x3> stream_windows(WindowEngine& engine, const GrayImage& img) {
  std::vector<Window3x3> out;
  for (auto p : img.pixels) {
    if (auto w = engine.feed(p)) out.push_back(*w);
  }
  while (engine.draining()) {
    if (auto w = engine.drain_step()) out.push_back(*w);
  }
  return out;
}

}  // namespace lanepipe::testing

#endif  // LANEPIPE_TESTS_SUPPORT_HPP_
