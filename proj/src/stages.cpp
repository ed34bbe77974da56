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

#include "lanepipe/stages.hpp"

#include <algorithm>

namespace lanepipe {

void GrayStage::clock(Cycle, std::optional<Word> input, bool output_taken) {
  if (output_taken) clear_output();
  if (input) emit(to_gray(unpack_rgb(*input), weights_));
}

void WindowStage::clock(Cycle, std::optional<Word> input, bool output_taken) {
  if (output_taken) clear_output();
  if (input) {
    if (auto w = engine_.feed(static_cast<std::uint8_t>(*input))) produce(*w);
  } else if (engine_.draining() && !out_valid()) {
    if (auto w = engine_.drain_step()) produce(*w);
  }
  if (engine_.frame_done()) engine_.frame_reset();
}

void WindowStage::produce(const Window3x3& w) {
  if (capture_windows_) windows_.push_back(w);
  emit(compute(w));
}

void WindowStage::reset() {
  engine_.frame_reset();
  clear_output();
  windows_.clear();
}

SobelStage::SobelStage(FrameGeometry geometry, SobelConfig cfg)
    : WindowStage(geometry), cfg_(cfg) {
  cfg_.validate();
}

Word SobelStage::compute(const Window3x3& w) {
  const unsigned mag = sobel_magnitude(w);
  if (capture_magnitudes_) magnitudes_.push_back(mag);
  return binarize(mag, cfg_);
}

void SobelStage::reset() {
  WindowStage::reset();
  magnitudes_.clear();
}

DecisionStage::DecisionStage(FrameGeometry geometry, DecisionConfig cfg)
    : geometry_(geometry),
      cfg_(cfg),
      counts_(static_cast<std::size_t>(geometry.width), 0),
      clusters_(cfg.min_hits(), cfg.merge_gap) {
  geometry_.validate();
  cfg_.validate(geometry_);
}

bool DecisionStage::idle() const {
  return !out_valid() && !pending_ && row_ == 0 && col_ == 0;
}

void DecisionStage::reset() {
  std::fill(counts_.begin(), counts_.end(), 0);
  clusters_ = ClusterAccumulator(cfg_.min_hits(), cfg_.merge_gap);
  row_ = 0;
  col_ = 0;
  pending_.reset();
  last_report_.reset();
  band_done_cycle_.reset();
  clear_output();
}

void DecisionStage::clock(Cycle cycle, std::optional<Word> input, bool output_taken) {
  if (output_taken) clear_output();

  if (input) {
    const bool in_band = row_ >= cfg_.band_top_row && row_ <= cfg_.band_bottom_row;
    auto& count = counts_[static_cast<std::size_t>(col_)];
    if (in_band && *input != 0) ++count;
    if (row_ == cfg_.band_bottom_row) {
      clusters_.push(col_, count);
      if (col_ == geometry_.width - 1) {
        const auto boundaries = clusters_.finish();
        const LaneReport report = locate(boundaries, cfg_);
        last_report_ = report;
        pending_ = pack_report(report);
        pending_due_ = cycle + kDecisionLatency;
        band_done_cycle_ = cycle;
      }
    }
    if (++col_ == geometry_.width) {
      col_ = 0;
      if (++row_ == geometry_.height) {
        row_ = 0;
        std::fill(counts_.begin(), counts_.end(), 0);
      }
    }
  }

  // Register the report so it is visible on cycle pending_due_.
  if (pending_ && !out_valid() && cycle + 1 >= pending_due_) {
    emit(*pending_);
    pending_.reset();
  }
}

}  // namespace lanepipe
