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

#ifndef LANEPIPE_SCENARIO_HPP_
#define LANEPIPE_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lanepipe/control_units.hpp"
#include "lanepipe/i2c_core.hpp"

namespace lanepipe {

struct StimulusPoint {
  std::uint64_t time_ms = 0;
  std::uint16_t raw = 0;
};

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// CSV `time_ms,raw_value`, times non-decreasing. An optional header line
// starting with a letter is skipped. raw_value is a 16-bit register word
// (decimal or 0x-prefixed hex).
std::vector<StimulusPoint> parse_stimulus(std::string_view text);

struct ScenarioConfig {
  std::uint64_t poll_ms = 100;
  std::uint64_t system_hz = 150'000'000;
  std::uint64_t scl_hz = 100'000;
  LightConfig light;
  TcuConfig tcu;
  std::uint8_t light_address = i2c::kLightAddress;
  std::uint8_t temperature_address = i2c::kTemperatureAddress;
};

struct ControlLogRow {
  std::uint64_t time_ms = 0;
  std::string unit;  // "light" or "temperature"
  std::uint16_t raw = 0;
  double converted = 0.0;
  ControlCommand command;
};

// Polls both sensors over the emulated bus every poll_ms from 0 up to the
// last stimulus time. Sensor registers follow the stimulus with
// sample-and-hold. Either trace may be empty.
std::vector<ControlLogRow> run_scenario(const std::vector<StimulusPoint>& lux,
                                        const std::vector<StimulusPoint>& temperature,
                                        const ScenarioConfig& cfg);

// Header `time_ms,unit,raw,converted,enable,mode,dac_code`.
std::string control_log_csv(const std::vector<ControlLogRow>& rows);

}  // namespace lanepipe

#endif  // LANEPIPE_SCENARIO_HPP_
