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

#ifndef LANEPIPE_WINDOW_ENGINE_HPP_
#define LANEPIPE_WINDOW_ENGINE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lanepipe/stream_core.hpp"

namespace lanepipe {

struct Window3x3 {
  // Row-major; taps[3 * i + j] is frame[row - 1 + i][col - 1 + j], or 0
  // when that position lies outside the frame.
  std::array<std::uint8_t, 9> taps{};
  int row = 0;
  int col = 0;

  std::uint8_t at(int i, int j) const { return taps[static_cast<std::size_t>(3 * i + j)]; }
  friend bool operator==(const Window3x3&, const Window3x3&) = default;
};

struct LineBufferState {
  // Oldest first. Buffer 1 holds the most recent row, buffer 2 the one above.
  std::vector<std::uint8_t> row_buffer_1;
  std::vector<std::uint8_t> row_buffer_2;
  std::array<std::array<std::uint8_t, 3>, 3> shift_taps{};
  std::size_t fill_count = 0;
  int cursor_row = 0;
  int cursor_col = 0;

  friend bool operator==(const LineBufferState&, const LineBufferState&) = default;
};

// Forms zero-padded 3x3 windows at stride 1 from a raster-order stream.
//
// Two row-length line buffers are cascaded behind the input; together with
// the live pixel they feed a 3x3 shift register. A formed window then passes
// through a short alignment pipeline, so the first window leaves on input
// N + 6 for row length N:
//   N inputs fill buffer 1, 3 more reach buffer 2, 2 shift the taps into
//   place and 1 registers the result.
// Windows are emitted for every one of the width*height centers. The ones
// still in flight after the last input are flushed with drain_step().
class WindowEngine {
 public:
  static constexpr int kAlignmentDepth = 4;

  explicit WindowEngine(FrameGeometry geometry);

  // Throws std::overflow_error if the whole frame was already fed.
  std::optional<Window3x3> feed(std::uint8_t pixel);
  // Shifts a padding pixel after the frame ended. Only legal while
  // draining().
  std::optional<Window3x3> drain_step();
  void frame_reset();

  // All pixels of the frame fed but windows still owed.
  bool draining() const { return pixels_fed_ == total_ && windows_emitted_ < total_; }
  bool frame_done() const { return windows_emitted_ == total_; }
  bool fresh() const { return pixels_fed_ == 0 && shifts_ == 0; }
  std::size_t windows_emitted() const { return windows_emitted_; }
  const FrameGeometry& geometry() const { return geometry_; }

  LineBufferState state() const;

 private:
  std::optional<Window3x3> shift(std::uint8_t pixel);

  FrameGeometry geometry_;
  std::size_t total_;
  std::vector<std::uint8_t> line_1_;
  std::vector<std::uint8_t> line_2_;
  std::size_t line_pos_ = 0;
  std::array<std::array<std::uint8_t, 3>, 3> taps_{};
  std::array<std::optional<Window3x3>, kAlignmentDepth> align_{};
  std::size_t align_pos_ = 0;
  std::size_t shifts_ = 0;
  std::size_t pixels_fed_ = 0;
  std::size_t windows_emitted_ = 0;
};

}  // namespace lanepipe

#endif  // LANEPIPE_WINDOW_ENGINE_HPP_
