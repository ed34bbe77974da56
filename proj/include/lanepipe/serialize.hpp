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

#ifndef LANEPIPE_SERIALIZE_HPP_
#define LANEPIPE_SERIALIZE_HPP_

#include <map>
#include <string>

#include <json.hpp>

#include "lanepipe/lane_decision.hpp"
#include "lanepipe/lane_pipeline.hpp"
#include "lanepipe/stream_core.hpp"

namespace lanepipe {

struct RunReport {
  LaneReport lane_report;
  CycleStats cycle_stats;
  double frame_time_ms = 0.0;
  std::map<std::string, Cycle> stage_latencies;
  // Absolute cycle of each stage's first valid output (first ingest = 0).
  std::map<std::string, Cycle> first_output_cycles;
  std::uint64_t clock_hz = kDefaultClockHz;
};

RunReport make_run_report(const FrameResult& result, std::uint64_t clock_hz);

nlohmann::json to_json(const CycleStats& stats);
nlohmann::json to_json(const LaneReport& report);
nlohmann::json to_json(const RunReport& report);

CycleStats cycle_stats_from_json(const nlohmann::json& j);
LaneReport lane_report_from_json(const nlohmann::json& j);

}  // namespace lanepipe

#endif  // LANEPIPE_SERIALIZE_HPP_
