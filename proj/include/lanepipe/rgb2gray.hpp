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

#ifndef LANEPIPE_RGB2GRAY_HPP_
#define LANEPIPE_RGB2GRAY_HPP_

#include <cstdint>
#include <string_view>

#include "lanepipe/stream_core.hpp"

namespace lanepipe {

struct PixelRgb {
  std::uint8_t red = 0;
  std::uint8_t green = 0;
  std::uint8_t blue = 0;

  friend bool operator==(const PixelRgb&, const PixelRgb&) = default;
};

// 24-bit stream word layout: red in bits 23..16, green 15..8, blue 7..0.
constexpr Word pack_rgb(PixelRgb p) {
  return (Word{p.red} << 16) | (Word{p.green} << 8) | Word{p.blue};
}
constexpr PixelRgb unpack_rgb(Word w) {
  return {static_cast<std::uint8_t>(w >> 16), static_cast<std::uint8_t>(w >> 8),
          static_cast<std::uint8_t>(w)};
}

// Luma weights in unsigned Q0.8. The three weights must sum to exactly 256 so
// that white maps to 255 and the product sum never leaves 16 bits.
class GrayWeights {
 public:
  // 0.2989 / 0.587 / 0.114 quantized to 77 / 150 / 29.
  constexpr GrayWeights() = default;

  // Throws ConfigError when the sum is not 256.
  static GrayWeights make(int red, int green, int blue);
  // Parses "R,G,B".
  static GrayWeights parse(std::string_view text);

  std::uint8_t red() const { return red_; }
  std::uint8_t green() const { return green_; }
  std::uint8_t blue() const { return blue_; }

  friend bool operator==(const GrayWeights&, const GrayWeights&) = default;

 private:
  constexpr GrayWeights(std::uint8_t r, std::uint8_t g, std::uint8_t b)
      : red_(r), green_(g), blue_(b) {}

  std::uint8_t red_ = 77;
  std::uint8_t green_ = 150;
  std::uint8_t blue_ = 29;
};

// (w_r*R + w_g*G + w_b*B) >> 8.
inline std::uint8_t to_gray(PixelRgb p, const GrayWeights& w = {}) {
  const unsigned sum = unsigned{w.red()} * p.red + unsigned{w.green()} * p.green +
                       unsigned{w.blue()} * p.blue;
  return static_cast<std::uint8_t>(sum >> 8);
}

}  // namespace lanepipe

#endif  // LANEPIPE_RGB2GRAY_HPP_
