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

#include "lanepipe/lane_decision.hpp"

#include <cmath>
#include <string>

#include "lanepipe/error.hpp"

namespace lanepipe {

namespace {

constexpr std::uint64_t kAbsent = 0xFFFF;

}  // namespace

DecisionConfig DecisionConfig::for_geometry(const FrameGeometry& g) {
  DecisionConfig cfg;
  cfg.band_bottom_row = g.height - 1;
  cfg.band_top_row = g.height * 300 / 416;
  if (cfg.band_top_row >= cfg.band_bottom_row) cfg.band_top_row = cfg.band_bottom_row - 1;
  cfg.center_column = g.width / 2;
  return cfg;
}

unsigned DecisionConfig::min_hits() const {
  const double need = column_hit_fraction * band_height();
  // Tolerate representation error in products like 0.30 * 100.
  return static_cast<unsigned>(std::ceil(need - 1e-9));
}

void DecisionConfig::validate(const FrameGeometry& g) const {
  if (band_top_row < 0 || band_top_row >= band_bottom_row || band_bottom_row >= g.height) {
    throw ConfigError("decision band rows [" + std::to_string(band_top_row) + ", " +
                      std::to_string(band_bottom_row) + "] do not fit a frame of height " +
                      std::to_string(g.height));
  }
  if (!(column_hit_fraction > 0.0 && column_hit_fraction <= 1.0)) {
    throw ConfigError("column hit fraction must be in (0, 1]");
  }
  if (merge_gap < 1) throw ConfigError("merge gap must be at least 1");
  if (center_column < 0 || center_column >= g.width) {
    throw ConfigError("center column " + std::to_string(center_column) + " lies outside the frame");
  }
}

Word pack_report(const LaneReport& r) {
  Word w = 0;
  if (r.valid) w |= Word{1} << 63;
  w |= (Word{r.lane_count} & 0x7FFF) << 48;
  w |= (r.current_index ? Word{*r.current_index} & 0xFFFF : kAbsent) << 32;
  w |= (r.left_boundary ? static_cast<Word>(*r.left_boundary) & 0xFFFF : kAbsent) << 16;
  w |= r.right_boundary ? static_cast<Word>(*r.right_boundary) & 0xFFFF : kAbsent;
  return w;
}

LaneReport unpack_report(Word w) {
  LaneReport r;
  r.valid = (w >> 63) & 1;
  r.lane_count = static_cast<unsigned>((w >> 48) & 0x7FFF);
  const auto idx = (w >> 32) & 0xFFFF;
  const auto left = (w >> 16) & 0xFFFF;
  const auto right = w & 0xFFFF;
  if (idx != kAbsent) r.current_index = static_cast<unsigned>(idx);
  if (left != kAbsent) r.left_boundary = static_cast<int>(left);
  if (right != kAbsent) r.right_boundary = static_cast<int>(right);
  return r;
}

std::vector<unsigned> column_histogram(std::span<const std::uint8_t> binary_frame,
                                       const FrameGeometry& geometry, const DecisionConfig& cfg) {
  cfg.validate(geometry);
  if (binary_frame.size() != geometry.pixel_count()) {
    throw ConfigError("binary frame size does not match the geometry");
  }
  const auto width = static_cast<std::size_t>(geometry.width);
  std::vector<unsigned> counts(width, 0);
  for (int r = cfg.band_top_row; r <= cfg.band_bottom_row; ++r) {
    const auto row = binary_frame.subspan(static_cast<std::size_t>(r) * width, width);
    for (std::size_t c = 0; c < width; ++c) {
      if (row[c] != 0) ++counts[c];
    }
  }
  return counts;
}

void ClusterAccumulator::push(int column, unsigned count) {
  if (count < min_hits_) return;
  if (open_ && column - last_candidate_ > merge_gap_) close();
  open_ = true;
  last_candidate_ = column;
  weight_ += count;
  moment_ += static_cast<std::uint64_t>(column) * count;
}

void ClusterAccumulator::close() {
  if (!open_) return;
  // round(moment / weight), ties up.
  centroids_.push_back(static_cast<int>((2 * moment_ + weight_) / (2 * weight_)));
  open_ = false;
  weight_ = 0;
  moment_ = 0;
}

std::vector<int> ClusterAccumulator::finish() {
  close();
  std::vector<int> out = std::move(centroids_);
  centroids_.clear();
  return out;
}

std::vector<int> cluster_boundaries(std::span<const unsigned> counts, const DecisionConfig& cfg) {
  ClusterAccumulator acc(cfg.min_hits(), cfg.merge_gap);
  for (std::size_t c = 0; c < counts.size(); ++c) acc.push(static_cast<int>(c), counts[c]);
  return acc.finish();
}

LaneReport locate(std::span<const int> boundaries, const DecisionConfig& cfg) {
  LaneReport report;
  report.lane_count = boundaries.size() > 1 ? static_cast<unsigned>(boundaries.size() - 1) : 0;
  if (report.lane_count == 0) return report;
  const int center = cfg.center_column;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    if (boundaries[i] <= center && center < boundaries[i + 1]) {
      report.valid = true;
      report.current_index = static_cast<unsigned>(i);
      report.left_boundary = boundaries[i];
      report.right_boundary = boundaries[i + 1];
      break;
    }
  }
  return report;
}

LaneReport decide(std::span<const std::uint8_t> binary_frame, const FrameGeometry& geometry,
                  const DecisionConfig& cfg) {
  const auto counts = column_histogram(binary_frame, geometry, cfg);
  const auto boundaries = cluster_boundaries(counts, cfg);
  return locate(boundaries, cfg);
}

}  // namespace lanepipe
