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

#ifndef LANEPIPE_LANE_PIPELINE_HPP_
#define LANEPIPE_LANE_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lanepipe/filters.hpp"
#include "lanepipe/image.hpp"
#include "lanepipe/lane_decision.hpp"
#include "lanepipe/rgb2gray.hpp"
#include "lanepipe/stages.hpp"
#include "lanepipe/stream_core.hpp"
#include "lanepipe/window_engine.hpp"

namespace lanepipe {

inline constexpr std::uint64_t kDefaultClockHz = 150'000'000;

struct PipelineConfig {
  FrameGeometry geometry;
  GrayWeights weights;
  SobelConfig sobel;
  DecisionConfig decision;
  std::size_t queue_capacity = 416;

  // Geometry-dependent defaults for everything else.
  static PipelineConfig for_geometry(FrameGeometry g);
  void validate() const;
};

struct CaptureOptions {
  bool stage_frames = false;  // gray/avg/sobel output frames
  bool windows = false;       // windows formed by the averaging stage
  bool magnitudes = false;    // Sobel magnitudes before binarization
};

struct FrameResult {
  LaneReport report;
  CycleStats stats;
  std::vector<StageStats> stages;  // gray, avg, sobel, decision
  std::optional<Cycle> band_done_cycle;
  std::optional<Cycle> report_cycle;

  // Filled when requested through CaptureOptions.
  GrayImage gray;
  GrayImage avg;
  GrayImage binary;
  std::vector<Window3x3> windows;
  std::vector<unsigned> magnitudes;
};

// gray -> avg -> sobel/binarize -> decision, one frame per run.
class LanePipeline {
 public:
  explicit LanePipeline(PipelineConfig cfg, CaptureOptions capture = {});

  // Streams one frame through the scheduler until everything drains.
  // Throws ConfigError if the image does not match the geometry.
  FrameResult run_frame(const RgbImage& image, const StallSchedule& sink_stalls = {});

  const PipelineConfig& config() const { return cfg_; }

 private:
  PipelineConfig cfg_;
  CaptureOptions capture_;
};

// Latencies as reported by the CLI: gray relative to ingest, avg relative
// to its own first input, sobel relative to the averaging stage's first
// input (the two filter stages back to back).
std::map<std::string, Cycle> stage_latencies(const FrameResult& result);

}  // namespace lanepipe

#endif  // LANEPIPE_LANE_PIPELINE_HPP_
