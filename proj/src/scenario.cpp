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

#include "lanepipe/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "lanepipe/error.hpp"

namespace lanepipe {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_unsigned(std::string_view text, T& out) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  if (text.empty()) return false;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out, base);
  return ec == std::errc{} && p == text.data() + text.size();
}

std::uint16_t value_at(const std::vector<StimulusPoint>& trace, std::uint64_t t) {
  auto it = std::upper_bound(trace.begin(), trace.end(), t,
                             [](std::uint64_t v, const StimulusPoint& p) { return v < p.time_ms; });
  if (it == trace.begin()) return trace.front().raw;
  return std::prev(it)->raw;
}

}  // namespace

std::vector<StimulusPoint> parse_stimulus(std::string_view text) {
  std::vector<StimulusPoint> points;
  std::size_t line_no = 0;
  bool first_content = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (first_content && std::isalpha(static_cast<unsigned char>(line.front()))) {
      first_content = false;
      continue;
    }
    first_content = false;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw TraceFormatError(line_no, "expected `time_ms,raw_value`");
    StimulusPoint p;
    if (!parse_unsigned(trim(line.substr(0, comma)), p.time_ms)) {
      throw TraceFormatError(line_no, "time_ms is not a non-negative integer");
    }
    unsigned raw = 0;
    if (!parse_unsigned(trim(line.substr(comma + 1)), raw) || raw > 0xFFFF) {
      throw TraceFormatError(line_no, "raw_value is not a 16-bit unsigned value");
    }
    p.raw = static_cast<std::uint16_t>(raw);
    if (!points.empty() && p.time_ms < points.back().time_ms) {
      throw TraceFormatError(line_no, "time_ms goes backwards");
    }
    points.push_back(p);
  }
  return points;
}

std::vector<ControlLogRow> run_scenario(const std::vector<StimulusPoint>& lux,
                                        const std::vector<StimulusPoint>& temperature,
                                        const ScenarioConfig& cfg) {
  if (cfg.poll_ms == 0) throw ConfigError("poll interval must be positive");
  const i2c::ClockDivider divider(cfg.system_hz, cfg.scl_hz);

  i2c::Bus bus;
  bus.attach(i2c::SensorDevice::light_sensor(cfg.light_address));
  bus.attach(i2c::SensorDevice::temperature_sensor(cfg.temperature_address));

  LightControlUnit light(bus, divider, cfg.light, cfg.light_address);
  TemperatureControlUnit tcu(bus, divider, cfg.tcu, cfg.temperature_address);
  if (!lux.empty() && !light.initialize()) throw std::runtime_error("light sensor did not acknowledge");

  std::uint64_t end = 0;
  if (!lux.empty()) end = std::max(end, lux.back().time_ms);
  if (!temperature.empty()) end = std::max(end, temperature.back().time_ms);

  std::vector<ControlLogRow> rows;
  if (lux.empty() && temperature.empty()) return rows;
  for (std::uint64_t t = 0; t <= end; t += cfg.poll_ms) {
    if (!lux.empty()) {
      bus.device(cfg.light_address)->set_brightness(value_at(lux, t));
      const LightReading r = light.poll();
      rows.push_back({t, "light", r.raw, static_cast<double>(r.scaled), r.command});
    }
    if (!temperature.empty()) {
      bus.device(cfg.temperature_address)->set_temperature_raw(value_at(temperature, t));
      const TemperatureReading r = tcu.poll();
      rows.push_back({t, "temperature", static_cast<std::uint16_t>((r.msb << 8) | r.lsb), r.celsius,
                      r.command});
    }
  }
  return rows;
}

std::string control_log_csv(const std::vector<ControlLogRow>& rows) {
  std::string out = "time_ms,unit,raw,converted,enable,mode,dac_code\n";
  char converted[64];
  for (const auto& r : rows) {
    if (r.unit == "light") {
      std::snprintf(converted, sizeof converted, "%u", static_cast<unsigned>(r.converted));
    } else {
      std::snprintf(converted, sizeof converted, "%.4f", r.converted);
    }
    out += std::to_string(r.time_ms) + "," + r.unit + "," + std::to_string(r.raw) + "," + converted + "," +
           (r.command.enable ? "1" : "0") + "," + std::string(to_string(r.command.mode)) + "," +
           std::to_string(r.command.dac_code) + "\n";
  }
  return out;
}

}  // namespace lanepipe
