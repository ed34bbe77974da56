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

#include "lanepipe/serialize.hpp"

namespace lanepipe {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

RunReport make_run_report(const FrameResult& result, std::uint64_t clock_hz) {
  RunReport r;
  r.lane_report = result.report;
  r.cycle_stats = result.stats;
  r.clock_hz = clock_hz;
  r.frame_time_ms = estimate_frame_time(result.stats.cycles_elapsed, clock_hz);
  r.stage_latencies = stage_latencies(result);
  for (const auto& s : result.stages) {
    if (s.first_output_cycle) r.first_output_cycles[s.name] = *s.first_output_cycle;
  }
  return r;
}

json to_json(const CycleStats& stats) {
  return {
      {"cycles_elapsed", stats.cycles_elapsed},
      {"transfers_in", stats.transfers_in},
      {"transfers_out", stats.transfers_out},
      {"first_output_cycle", optional_json(stats.first_output_cycle)},
      {"stall_cycles", stats.stall_cycles},
  };
}

json to_json(const LaneReport& report) {
  return {
      {"lane_count", report.lane_count},
      {"current_index", optional_json(report.current_index)},
      {"left_boundary", optional_json(report.left_boundary)},
      {"right_boundary", optional_json(report.right_boundary)},
      {"valid", report.valid},
  };
}

json to_json(const RunReport& report) {
  return {
      {"lane_report", to_json(report.lane_report)},
      {"cycle_stats", to_json(report.cycle_stats)},
      {"frame_time_ms", report.frame_time_ms},
      {"clock_hz", report.clock_hz},
      {"stage_latencies", report.stage_latencies},
      {"first_output_cycles", report.first_output_cycles},
  };
}

CycleStats cycle_stats_from_json(const json& j) {
  CycleStats s;
  s.cycles_elapsed = j.at("cycles_elapsed").get<Cycle>();
  s.transfers_in = j.at("transfers_in").get<std::uint64_t>();
  s.transfers_out = j.at("transfers_out").get<std::uint64_t>();
  s.first_output_cycle = optional_from<Cycle>(j, "first_output_cycle");
  s.stall_cycles = j.at("stall_cycles").get<std::uint64_t>();
  return s;
}

LaneReport lane_report_from_json(const json& j) {
  LaneReport r;
  r.lane_count = j.at("lane_count").get<unsigned>();
  r.current_index = optional_from<unsigned>(j, "current_index");
  r.left_boundary = optional_from<int>(j, "left_boundary");
  r.right_boundary = optional_from<int>(j, "right_boundary");
  r.valid = j.at("valid").get<bool>();
  return r;
}

}  // namespace lanepipe
