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

#ifndef LANEPIPE_LANE_DECISION_HPP_
#define LANEPIPE_LANE_DECISION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lanepipe/stream_core.hpp"

namespace lanepipe {

struct DecisionConfig {
  int band_top_row = 300;
  int band_bottom_row = 415;
  double column_hit_fraction = 0.30;
  int merge_gap = 10;
  int center_column = 208;

  // Band covering the lower ~28% of the frame and the horizontal center;
  // reproduces the 416x416 defaults above.
  static DecisionConfig for_geometry(const FrameGeometry& g);

  int band_height() const { return band_bottom_row - band_top_row + 1; }
  // Smallest column count that makes a boundary candidate.
  unsigned min_hits() const;
  // Throws ConfigError if the band or center does not fit the geometry.
  void validate(const FrameGeometry& g) const;
};

struct LaneReport {
  unsigned lane_count = 0;
  std::optional<unsigned> current_index;
  std::optional<int> left_boundary;
  std::optional<int> right_boundary;
  bool valid = false;

  friend bool operator==(const LaneReport&, const LaneReport&) = default;
};

// Report as carried on the stream: bit 63 valid, 62..48 lane count,
// 47..32 index, 31..16 left, 15..0 right. Absent fields are all ones.
Word pack_report(const LaneReport& r);
LaneReport unpack_report(Word w);

// counts[c] = white pixels of column c inside the band. `binary_frame` is
// the full raster-order frame.
std::vector<unsigned> column_histogram(std::span<const std::uint8_t> binary_frame,
                                       const FrameGeometry& geometry, const DecisionConfig& cfg);

// Merges candidate columns into clusters one column at a time and reports
// each cluster's count-weighted centroid, rounded half-up.
class ClusterAccumulator {
 public:
  ClusterAccumulator(unsigned min_hits, int merge_gap) : min_hits_(min_hits), merge_gap_(merge_gap) {}

  void push(int column, unsigned count);
  // Closes the open cluster and returns all centroids, strictly increasing.
  std::vector<int> finish();

 private:
  void close();

  unsigned min_hits_;
  int merge_gap_;
  bool open_ = false;
  int last_candidate_ = 0;
  std::uint64_t weight_ = 0;
  std::uint64_t moment_ = 0;
  std::vector<int> centroids_;
};

std::vector<int> cluster_boundaries(std::span<const unsigned> counts, const DecisionConfig& cfg);

LaneReport locate(std::span<const int> boundaries, const DecisionConfig& cfg);

// Whole-frame convenience: histogram, clusters, report.
LaneReport decide(std::span<const std::uint8_t> binary_frame, const FrameGeometry& geometry,
                  const DecisionConfig& cfg);

}  // namespace lanepipe

#endif  // LANEPIPE_LANE_DECISION_HPP_
