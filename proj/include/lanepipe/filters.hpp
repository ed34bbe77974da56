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

#ifndef LANEPIPE_FILTERS_HPP_
#define LANEPIPE_FILTERS_HPP_

#include <cstdint>

#include "lanepipe/window_engine.hpp"

namespace lanepipe {

inline constexpr unsigned kMaxSobelMagnitude = 4 * 255 + 4 * 255;

struct SobelConfig {
  unsigned threshold = 100;
  static constexpr std::uint8_t kWhite = 255;

  // Throws ConfigError if threshold exceeds the magnitude range.
  void validate() const;
};

// Box filter: floor(sum / 9).
std::uint8_t average(const Window3x3& w);

// |Gx| + |Gy| with the standard Sobel kernel pair.
unsigned sobel_magnitude(const Window3x3& w);

// 255 iff magnitude >= threshold.
inline std::uint8_t binarize(unsigned magnitude, const SobelConfig& cfg) {
  return magnitude >= cfg.threshold ? SobelConfig::kWhite : 0;
}

}  // namespace lanepipe

#endif  // LANEPIPE_FILTERS_HPP_
