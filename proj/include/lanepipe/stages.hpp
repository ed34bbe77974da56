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

#ifndef LANEPIPE_STAGES_HPP_
#define LANEPIPE_STAGES_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lanepipe/filters.hpp"
#include "lanepipe/lane_decision.hpp"
#include "lanepipe/rgb2gray.hpp"
#include "lanepipe/stream_core.hpp"
#include "lanepipe/window_engine.hpp"

namespace lanepipe {

// Stage 1: packed RGB in, 8-bit gray out, one cycle.
class GrayStage final : public Stage {
 public:
  explicit GrayStage(GrayWeights weights = {}) : weights_(weights) {}

  std::string_view name() const override { return "gray"; }
  bool ready(bool downstream_ready) const override { return !out_valid() || downstream_ready; }
  void clock(Cycle cycle, std::optional<Word> input, bool output_taken) override;
  bool idle() const override { return !out_valid(); }
  void reset() override { clear_output(); }

 private:
  GrayWeights weights_;
};

// Line-buffered 3x3 stage. The subclass maps each window to one output word.
class WindowStage : public Stage {
 public:
  explicit WindowStage(FrameGeometry geometry) : engine_(geometry) {}

  bool ready(bool downstream_ready) const override {
    return !engine_.draining() && (!out_valid() || downstream_ready);
  }
  void clock(Cycle cycle, std::optional<Word> input, bool output_taken) override;
  bool idle() const override { return !out_valid() && engine_.fresh(); }
  void reset() override;

  // Keep a copy of every emitted window (debug dumps).
  void set_window_capture(bool enabled) { capture_windows_ = enabled; }
  const std::vector<Window3x3>& windows() const { return windows_; }

 protected:
  virtual Word compute(const Window3x3& w) = 0;

 private:
  void produce(const Window3x3& w);

  WindowEngine engine_;
  bool capture_windows_ = false;
  std::vector<Window3x3> windows_;
};

// Stage 2.
class AverageStage final : public WindowStage {
 public:
  using WindowStage::WindowStage;
  std::string_view name() const override { return "avg"; }

 protected:
  Word compute(const Window3x3& w) override { return average(w); }
};

// Stages 3 and 4: Sobel magnitude followed by binarization.
class SobelStage final : public WindowStage {
 public:
  SobelStage(FrameGeometry geometry, SobelConfig cfg);
  std::string_view name() const override { return "sobel"; }

  void set_magnitude_capture(bool enabled) { capture_magnitudes_ = enabled; }
  const std::vector<unsigned>& magnitudes() const { return magnitudes_; }
  void reset() override;

 protected:
  Word compute(const Window3x3& w) override;

 private:
  SobelConfig cfg_;
  bool capture_magnitudes_ = false;
  std::vector<unsigned> magnitudes_;
};

// Stage 5: streams the binary frame, accumulating the band histogram and
// clustering each column as soon as its count is final (during the last
// band row). The packed report appears kDecisionLatency cycles after the
// last band pixel is consumed.
class DecisionStage final : public Stage {
 public:
  static constexpr Cycle kDecisionLatency = 3;

  DecisionStage(FrameGeometry geometry, DecisionConfig cfg);

  std::string_view name() const override { return "decision"; }
  bool ready(bool downstream_ready) const override { return !out_valid() || downstream_ready; }
  void clock(Cycle cycle, std::optional<Word> input, bool output_taken) override;
  bool idle() const override;
  void reset() override;

  const std::optional<LaneReport>& last_report() const { return last_report_; }
  // Cycle on which the final band pixel was consumed.
  std::optional<Cycle> band_done_cycle() const { return band_done_cycle_; }

 private:
  FrameGeometry geometry_;
  DecisionConfig cfg_;
  std::vector<unsigned> counts_;
  ClusterAccumulator clusters_;
  int row_ = 0;
  int col_ = 0;
  std::optional<Word> pending_;
  Cycle pending_due_ = 0;
  std::optional<LaneReport> last_report_;
  std::optional<Cycle> band_done_cycle_;
};

}  // namespace lanepipe

#endif  // LANEPIPE_STAGES_HPP_
