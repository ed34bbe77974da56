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

#include <gtest/gtest.h>

#include "lanepipe/error.hpp"
#include "lanepipe/lane_pipeline.hpp"
#include "lanepipe/serialize.hpp"
#include "lanepipe/stages.hpp"
#include "support.hpp"

namespace lanepipe {
namespace {

TEST(LanePipeline, SyntheticRoadFullFrame) {
  const std::vector<int> b{60, 150, 290, 380};
  const auto img = synth::road_image(416, 416, b);
  LanePipeline lp(PipelineConfig{}, {.stage_frames = true});
  const auto r = lp.run_frame(img);
  EXPECT_TRUE(r.report.valid);
  EXPECT_EQ(r.report.lane_count, 3u);
  EXPECT_EQ(r.report.current_index, 1u);
  EXPECT_EQ(r.report.left_boundary, 150);
  EXPECT_EQ(r.report.right_boundary, 290);
  EXPECT_EQ(r.binary.pixels.size(), 416u * 416u);
  EXPECT_EQ(r.stages[2].transfers_out, 416u * 416u);
  EXPECT_EQ(r.stats.transfers_in, 416u * 416u);
  EXPECT_EQ(r.stats.transfers_out, 1u);
}

TEST(LanePipeline, ReportWithinDecisionBudget) {
  const std::vector<int> b{100, 300};
  LanePipeline lp(PipelineConfig{});
  const auto r = lp.run_frame(synth::road_image(416, 416, b));
  ASSERT_TRUE(r.band_done_cycle && r.report_cycle);
  EXPECT_EQ(*r.report_cycle - *r.band_done_cycle, DecisionStage::kDecisionLatency);
  EXPECT_LE(*r.report_cycle - *r.band_done_cycle, 16u);
  EXPECT_EQ(r.stats.cycles_elapsed, 416u * 416u + 848u);
  EXPECT_LE(r.stats.cycles_elapsed, 416u * 416u + 845u + 16u);
}

TEST(LanePipeline, BlackFrameIsInvalid) {
  LanePipeline lp(PipelineConfig{});
  const auto r = lp.run_frame(RgbImage(416, 416));
  EXPECT_FALSE(r.report.valid);
  EXPECT_FALSE(r.report.left_boundary);
}

TEST(LanePipeline, SmallGeometryLatencies) {
  for (int w : {3, 5, 16, 100}) {
    auto cfg = PipelineConfig::for_geometry({w, 8});
    LanePipeline lp(cfg);
    const auto r = lp.run_frame(RgbImage(w, 8));
    EXPECT_EQ(r.stages[1].latency(), static_cast<Cycle>(w) + 6) << w;
    EXPECT_EQ(r.stages[2].latency(), static_cast<Cycle>(w) + 6) << w;
  }
}

TEST(LanePipeline, CapturesWindowsAndMagnitudes) {
  auto rng = testing::rng_for(61);
  const auto img = testing::random_rgb(rng, 12, 9);
  LanePipeline lp(PipelineConfig::for_geometry({12, 9}), {.windows = true, .magnitudes = true});
  const auto r = lp.run_frame(img);
  EXPECT_EQ(r.windows.size(), 108u);
  EXPECT_EQ(r.magnitudes.size(), 108u);
  EXPECT_EQ(r.windows[13].row, 1);
  EXPECT_EQ(r.windows[13].col, 1);
}

TEST(LanePipeline, InvalidConfigRejected) {
  PipelineConfig cfg;
  cfg.sobel.threshold = 5000;
  EXPECT_THROW(LanePipeline{cfg}, ConfigError);
  cfg = PipelineConfig::for_geometry({2, 2});
  EXPECT_THROW(LanePipeline{cfg}, ConfigError);
}

TEST(Serialize, RunReportSchema) {
  const std::vector<int> b{100, 300};
  LanePipeline lp(PipelineConfig{});
  const auto result = lp.run_frame(synth::road_image(416, 416, b));
  const auto j = to_json(make_run_report(result, kDefaultClockHz));
  EXPECT_EQ(j.at("stage_latencies").at("gray"), 1);
  EXPECT_EQ(j.at("stage_latencies").at("avg"), 422);
  EXPECT_EQ(j.at("stage_latencies").at("sobel"), 844);
  EXPECT_DOUBLE_EQ(j.at("frame_time_ms").get<double>(),
                   estimate_frame_time(result.stats.cycles_elapsed, kDefaultClockHz));
  EXPECT_EQ(cycle_stats_from_json(j.at("cycle_stats")), result.stats);
  EXPECT_EQ(lane_report_from_json(j.at("lane_report")), result.report);
  for (const char* key : {"lane_count", "current_index", "left_boundary", "right_boundary", "valid"}) {
    EXPECT_TRUE(j.at("lane_report").contains(key)) << key;
  }
}

TEST(Serialize, AbsentFieldsAreNull) {
  const auto j = to_json(LaneReport{});
  EXPECT_TRUE(j.at("current_index").is_null());
  EXPECT_EQ(lane_report_from_json(j), LaneReport{});
  const auto s = to_json(CycleStats{});
  EXPECT_TRUE(s.at("first_output_cycle").is_null());
}

}  // namespace
}  // namespace lanepipe
