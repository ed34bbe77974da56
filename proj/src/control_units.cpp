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

#include "lanepipe/control_units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lanepipe/error.hpp"

namespace lanepipe {

void LightConfig::validate() const {
  if (threshold_12bit > kDacMax) {
    throw ConfigError("light threshold must be in [0, 4095], got " + std::to_string(threshold_12bit));
  }
}

void TcuConfig::validate() const {
  if (!(noise_threshold_c >= 0.0)) throw ConfigError("TCU noise threshold must be non-negative");
  if (!(resolution_c_per_lsb > 0.0)) throw ConfigError("sensor resolution must be positive");
  if (!(full_scale_deviation_c > 0.0)) throw ConfigError("full-scale deviation must be positive");
}

std::string_view to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::kOff: return "off";
    case ControlMode::kLightOn: return "light_on";
    case ControlMode::kCool: return "cool";
    case ControlMode::kHeat: return "heat";
  }
  return "?";
}

ControlCommand light_decision(unsigned scaled, const LightConfig& cfg) {
  if (scaled < cfg.threshold_12bit) {
    return {true, std::min(cfg.threshold_12bit - scaled, kDacMax), ControlMode::kLightOn};
  }
  return {};
}

double temp_celsius(std::uint8_t msb, std::uint8_t lsb, const TcuConfig& cfg) {
  const auto word = static_cast<std::int16_t>(static_cast<std::uint16_t>((msb << 8) | lsb));
  // Arithmetic shift keeps the sign of the 12-bit reading.
  const int sensor_out = word >> 4;
  return sensor_out * cfg.resolution_c_per_lsb;
}

ControlCommand tcu_step(double temp_c, const TcuConfig& cfg) {
  const double deviation = std::abs(temp_c - TcuConfig::kReferenceC);
  if (deviation <= cfg.noise_threshold_c) return {};
  const double code = std::floor(deviation * kDacMax / cfg.full_scale_deviation_c + 0.5);
  ControlCommand cmd;
  cmd.enable = true;
  cmd.mode = temp_c > TcuConfig::kReferenceC ? ControlMode::kCool : ControlMode::kHeat;
  cmd.dac_code = code >= kDacMax ? kDacMax : static_cast<unsigned>(code);
  return cmd;
}

std::uint16_t encode_temperature(double temp_c, const TcuConfig& cfg) {
  long lsbs = std::lround(temp_c / cfg.resolution_c_per_lsb);
  lsbs = std::clamp(lsbs, -2048L, 2047L);
  return static_cast<std::uint16_t>((lsbs & 0xFFF) << 4);
}

LightControlUnit::LightControlUnit(i2c::Bus& bus, i2c::ClockDivider divider, LightConfig cfg,
                                   std::uint8_t address)
    : master_(bus, divider), cfg_(cfg), address_(address) {
  cfg_.validate();
}

bool LightControlUnit::initialize() {
  const std::uint8_t power_on = 0x01;
  return master_.write(address_, i2c::kLightControlRegister, std::span(&power_on, 1)).acked;
}

LightReading LightControlUnit::poll() {
  LightReading r;
  const auto t = master_.read(address_, i2c::kLightDataRegister, 2);
  if (!t.data_valid) return r;
  r.ok = true;
  r.raw = static_cast<std::uint16_t>((t.payload[0] << 8) | t.payload[1]);
  r.scaled = scale_brightness(r.raw);
  r.command = light_decision(r.scaled, cfg_);
  return r;
}

TemperatureControlUnit::TemperatureControlUnit(i2c::Bus& bus, i2c::ClockDivider divider, TcuConfig cfg,
                                               std::uint8_t address)
    : master_(bus, divider), cfg_(cfg), address_(address) {
  cfg_.validate();
}

TemperatureReading TemperatureControlUnit::poll() {
  TemperatureReading r;
  const auto t = master_.read(address_, i2c::kTemperatureRegister, 2);
  if (!t.data_valid) return r;
  r.ok = true;
  r.msb = t.payload[0];
  r.lsb = t.payload[1];
  r.celsius = temp_celsius(r.msb, r.lsb, cfg_);
  r.command = tcu_step(r.celsius, cfg_);
  return r;
}

}  // namespace lanepipe
