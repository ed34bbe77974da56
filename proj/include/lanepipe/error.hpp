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

#ifndef LANEPIPE_ERROR_HPP_
#define LANEPIPE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lanepipe {

// Raised for invalid geometry, thresholds, weights, wiring and similar
// configuration problems. Always detected before any cycle is simulated.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace lanepipe

#endif  // LANEPIPE_ERROR_HPP_
