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

#ifndef LANEPIPE_CONTROL_UNITS_HPP_
#define LANEPIPE_CONTROL_UNITS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "lanepipe/i2c_core.hpp"

namespace lanepipe {

inline constexpr unsigned kDacMax = 4095;

struct LightConfig {
  unsigned threshold_12bit = 2000;
  void validate() const;
};

struct TcuConfig {
  static constexpr double kReferenceC = 25.0;
  double noise_threshold_c = 0.5;
  double resolution_c_per_lsb = 0.0625;
  double full_scale_deviation_c = 25.0;
  void validate() const;
};

enum class ControlMode { kOff, kLightOn, kCool, kHeat };
std::string_view to_string(ControlMode mode);

struct ControlCommand {
  bool enable = false;
  unsigned dac_code = 0;
  ControlMode mode = ControlMode::kOff;

  friend bool operator==(const ControlCommand&, const ControlCommand&) = default;
};

// 16-bit brightness to 12-bit DAC range: raw >> 4.
constexpr unsigned scale_brightness(std::uint16_t raw) { return raw >> 4u; }

// Lamp on (dac = threshold - scaled) only when strictly below the threshold.
ControlCommand light_decision(unsigned scaled, const LightConfig& cfg);

// Left-justified 12-bit two's complement reading times the LSB resolution.
double temp_celsius(std::uint8_t msb, std::uint8_t lsb, const TcuConfig& cfg);

// Proportional heat/cool command outside the deadband around 25 C.
ControlCommand tcu_step(double temp_c, const TcuConfig& cfg);

// Inverse of temp_celsius for the default left-justified encoding, rounded
// to the nearest LSB and clamped to the 12-bit range.
std::uint16_t encode_temperature(double temp_c, const TcuConfig& cfg);

struct LightReading {
  bool ok = false;
  std::uint16_t raw = 0;
  unsigned scaled = 0;
  ControlCommand command;
};

struct TemperatureReading {
  bool ok = false;
  std::uint8_t msb = 0;
  std::uint8_t lsb = 0;
  double celsius = 0.0;
  ControlCommand command;
};

// Clock divider + I2C controller + scaler/comparator.
class LightControlUnit {
 public:
  LightControlUnit(i2c::Bus& bus, i2c::ClockDivider divider, LightConfig cfg = {},
                   std::uint8_t address = i2c::kLightAddress);

  // Writes the sensor's control register (power on). Returns false on NACK.
  bool initialize();
  // One read of the brightness register and the resulting command. A failed
  // read leaves the output off.
  LightReading poll();
  const i2c::Master& master() const { return master_; }

 private:
  i2c::Master master_;
  LightConfig cfg_;
  std::uint8_t address_;
};

class TemperatureControlUnit {
 public:
  TemperatureControlUnit(i2c::Bus& bus, i2c::ClockDivider divider, TcuConfig cfg = {},
                         std::uint8_t address = i2c::kTemperatureAddress);

  TemperatureReading poll();
  const i2c::Master& master() const { return master_; }

 private:
  i2c::Master master_;
  TcuConfig cfg_;
  std::uint8_t address_;
};

}  // namespace lanepipe

#endif  // LANEPIPE_CONTROL_UNITS_HPP_
