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

#include "lanepipe/filters.hpp"

#include <cstdlib>
#include <string>

#include "lanepipe/error.hpp"

namespace lanepipe {

void SobelConfig::validate() const {
  if (threshold > kMaxSobelMagnitude) {
    throw ConfigError("sobel threshold must be in [0, " + std::to_string(kMaxSobelMagnitude) +
                      "], got " + std::to_string(threshold));
  }
}

std::uint8_t average(const Window3x3& w) {
  unsigned sum = 0;
  for (auto t : w.taps) sum += t;
  // floor(sum / 9) as a multiply-shift; exact for every sum in [0, 2295].
  return static_cast<std::uint8_t>((sum * 7282u) >> 16);
}

unsigned sobel_magnitude(const Window3x3& w) {
  const int p00 = w.at(0, 0), p01 = w.at(0, 1), p02 = w.at(0, 2);
  const int p10 = w.at(1, 0), p12 = w.at(1, 2);
  const int p20 = w.at(2, 0), p21 = w.at(2, 1), p22 = w.at(2, 2);
  const int gx = (p02 + 2 * p12 + p22) - (p00 + 2 * p10 + p20);
  const int gy = (p20 + 2 * p21 + p22) - (p00 + 2 * p01 + p02);
  return static_cast<unsigned>(std::abs(gx) + std::abs(gy));
}

}  // namespace lanepipe
