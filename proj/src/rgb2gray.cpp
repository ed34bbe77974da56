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

#include "lanepipe/rgb2gray.hpp"

#include <charconv>
#include <string>

#include "lanepipe/error.hpp"

namespace lanepipe {

GrayWeights GrayWeights::make(int red, int green, int blue) {
  auto in_range = [](int v) { return v >= 0 && v <= 255; };
  if (!in_range(red) || !in_range(green) || !in_range(blue)) {
    throw ConfigError("gray weights must each fit in 8 bits");
  }
  if (red + green + blue != 256) {
    throw ConfigError("gray weights must sum to 256, got " + std::to_string(red + green + blue));
  }
  return GrayWeights(static_cast<std::uint8_t>(red), static_cast<std::uint8_t>(green),
                     static_cast<std::uint8_t>(blue));
}

GrayWeights GrayWeights::parse(std::string_view text) {
  int values[3] = {};
  std::string_view rest = text;
  for (int i = 0; i < 3; ++i) {
    const auto comma = rest.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw ConfigError("gray weights must look like R,G,B, got `" + std::string(text) + "`");
    }
    const auto field = rest.substr(0, comma);
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), values[i]);
    if (ec != std::errc{} || p != field.data() + field.size()) {
      throw ConfigError("gray weights must look like R,G,B, got `" + std::string(text) + "`");
    }
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return make(values[0], values[1], values[2]);
}

}  // namespace lanepipe
