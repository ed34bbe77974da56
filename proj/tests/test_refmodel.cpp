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

#include <cmath>
#include <cstdlib>

#include "lanepipe/lane_pipeline.hpp"
#include "lanepipe/refmodel.hpp"
#include "support.hpp"

namespace lanepipe {
namespace {

TEST(RefGray, FloatExamples) {
  EXPECT_NEAR(ref::gray_float({255, 255, 255}), 254.9745, 1e-9);
  EXPECT_DOUBLE_EQ(ref::gray_float({0, 0, 0}), 0.0);
  EXPECT_NEAR(ref::gray_float({255, 0, 0}), 76.2195, 1e-9);
}

TEST(RefGray, IntegerDivisionMatchesShift) {
  auto rng = testing::rng_for(91);
  std::uniform_int_distribution<int> d(0, 255);
  for (int i = 0; i < 100000; ++i) {
    const PixelRgb p{static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
                     static_cast<std::uint8_t>(d(rng))};
    ASSERT_EQ(ref::gray_int(p), to_gray(p));
  }
}

TEST(Conv2d, Examples) {
  ref::FloatFrame f{3, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  const ref::Kernel3x3 identity{{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
  EXPECT_EQ(ref::conv2d_ref(f, identity).samples, f.samples);
  EXPECT_NEAR(ref::conv2d_ref(f, ref::kBoxKernel).at(1, 1), 4.0, 1e-12);
  ref::FloatFrame flat{5, 4, std::vector<double>(20, 37.0)};
  EXPECT_NEAR(ref::conv2d_ref(flat, ref::kBoxKernel).at(2, 2), 37.0, 1e-12);
  // Corner sees 4 of 9 taps under zero padding.
  EXPECT_NEAR(ref::conv2d_ref(flat, ref::kBoxKernel).at(0, 0), 37.0 * 4 / 9, 1e-12);
}

TEST(RefPipeline, SyntheticRoad) {
  const std::vector<int> b{120, 300};
  const auto out = ref::pipeline_ref(synth::road_image(416, 416, b), 100, DecisionConfig{});
  EXPECT_TRUE(out.report.valid);
  EXPECT_LE(std::abs(*out.report.left_boundary - 120), 2);
  EXPECT_LE(std::abs(*out.report.right_boundary - 300), 2);
  EXPECT_FALSE(ref::pipeline_ref(RgbImage(416, 416), 100, DecisionConfig{}).report.valid);
}

TEST(RefPipeline, StreamingMatchesOracleOnSmallFrames) {
  auto rng = testing::rng_for(92);
  std::uniform_int_distribution<int> dim(3, 32);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = dim(rng), h = dim(rng);
    const auto img = testing::random_rgb(rng, w, h);
    const auto cfg = PipelineConfig::for_geometry({w, h});
    LanePipeline lp(cfg, {.stage_frames = true, .magnitudes = true});
    const auto got = lp.run_frame(img);
    const auto want = ref::pipeline_ref(img, cfg.sobel.threshold, cfg.decision);
    ASSERT_EQ(got.gray, want.gray);
    ASSERT_EQ(got.avg, want.avg);
    ASSERT_EQ(got.magnitudes, want.magnitudes);
    ASSERT_EQ(got.binary, want.binary);
    ASSERT_EQ(got.report, want.report);
  }
}

TEST(RefPipeline, FixedPointAverageCloseToFloat) {
  auto rng = testing::rng_for(93);
  const auto img = testing::random_rgb(rng, 32, 32);
  const auto avg_f = ref::conv2d_ref(ref::gray_float_frame(img), ref::kBoxKernel);
  const auto avg_i = ref::average_int(ref::gray_int_frame(img));
  for (std::size_t i = 0; i < avg_i.pixels.size(); ++i) {
    ASSERT_LE(std::abs(avg_i.pixels[i] - avg_f.samples[i]), 3.0);
  }
}

}  // namespace
}  // namespace lanepipe
