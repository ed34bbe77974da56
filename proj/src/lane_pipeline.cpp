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

#include "lanepipe/lane_pipeline.hpp"

#include <string>

#include "lanepipe/error.hpp"

namespace lanepipe {

namespace {

constexpr std::size_t kGray = 0;
constexpr std::size_t kAvg = 1;
constexpr std::size_t kSobel = 2;
constexpr std::size_t kDecision = 3;

GrayImage to_image(const FrameGeometry& g, const std::vector<Word>& words) {
  GrayImage img(g.width, g.height);
  for (std::size_t i = 0; i < words.size() && i < img.pixels.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>(words[i]);
  }
  return img;
}

}  // namespace

PipelineConfig PipelineConfig::for_geometry(FrameGeometry g) {
  PipelineConfig cfg;
  cfg.geometry = g;
  cfg.decision = DecisionConfig::for_geometry(g);
  cfg.queue_capacity = static_cast<std::size_t>(g.width);
  return cfg;
}

void PipelineConfig::validate() const {
  geometry.validate();
  sobel.validate();
  decision.validate(geometry);
}

LanePipeline::LanePipeline(PipelineConfig cfg, CaptureOptions capture)
    : cfg_(std::move(cfg)), capture_(capture) {
  cfg_.validate();
}

FrameResult LanePipeline::run_frame(const RgbImage& image, const StallSchedule& sink_stalls) {
  if (image.width != cfg_.geometry.width || image.height != cfg_.geometry.height) {
    throw ConfigError("image is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                      " but the pipeline is configured for " + std::to_string(cfg_.geometry.width) +
                      "x" + std::to_string(cfg_.geometry.height));
  }

  std::vector<Word> beats;
  beats.reserve(image.pixels.size());
  for (const auto& p : image.pixels) beats.push_back(pack_rgb(p));

  std::vector<std::unique_ptr<Stage>> stages;
  stages.push_back(std::make_unique<GrayStage>(cfg_.weights));
  stages.push_back(std::make_unique<AverageStage>(cfg_.geometry));
  stages.push_back(std::make_unique<SobelStage>(cfg_.geometry, cfg_.sobel));
  stages.push_back(std::make_unique<DecisionStage>(cfg_.geometry, cfg_.decision));

  Pipeline pipe(std::make_unique<VectorSource>(std::move(beats)), std::move(stages),
                std::make_unique<CollectingSink>(sink_stalls), cfg_.queue_capacity);

  if (capture_.stage_frames) {
    pipe.set_capture(kGray, true);
    pipe.set_capture(kAvg, true);
    pipe.set_capture(kSobel, true);
  }
  pipe.stage_as<AverageStage>(kAvg).set_window_capture(capture_.windows);
  pipe.stage_as<SobelStage>(kSobel).set_magnitude_capture(capture_.magnitudes);

  // Generous bound: every pixel may be held up by stalls, but a drained
  // pipeline must finish eventually.
  const Cycle budget = 64 * (cfg_.geometry.pixel_count() + 4096) +
                       (sink_stalls.entries().empty() ? 0 : sink_stalls.entries().back().first);
  pipe.run_until_idle(budget);

  FrameResult result;
  result.stats = pipe.stats();
  result.stages.assign(pipe.stage_stats().begin(), pipe.stage_stats().end());
  const auto& decision = pipe.stage_as<DecisionStage>(kDecision);
  if (decision.last_report()) result.report = *decision.last_report();
  result.band_done_cycle = decision.band_done_cycle();
  result.report_cycle = result.stages[kDecision].first_output_cycle;

  if (capture_.stage_frames) {
    result.gray = to_image(cfg_.geometry, pipe.captured(kGray));
    result.avg = to_image(cfg_.geometry, pipe.captured(kAvg));
    result.binary = to_image(cfg_.geometry, pipe.captured(kSobel));
  }
  result.windows = pipe.stage_as<AverageStage>(kAvg).windows();
  result.magnitudes = pipe.stage_as<SobelStage>(kSobel).magnitudes();
  return result;
}

std::map<std::string, Cycle> stage_latencies(const FrameResult& result) {
  std::map<std::string, Cycle> out;
  const auto& gray = result.stages.at(kGray);
  const auto& avg = result.stages.at(kAvg);
  const auto& sobel = result.stages.at(kSobel);
  if (auto l = gray.latency()) out["gray"] = *l;
  if (auto l = avg.latency()) out["avg"] = *l;
  if (avg.first_input_cycle && sobel.first_output_cycle) {
    out["sobel"] = *sobel.first_output_cycle - *avg.first_input_cycle;
  }
  return out;
}

}  // namespace lanepipe
