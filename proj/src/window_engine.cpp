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

#include "lanepipe/window_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace lanepipe {

WindowEngine::WindowEngine(FrameGeometry geometry)
    : geometry_(geometry), total_(0) {
  geometry_.validate();
  total_ = geometry_.pixel_count();
  line_1_.assign(static_cast<std::size_t>(geometry_.width), 0);
  line_2_.assign(static_cast<std::size_t>(geometry_.width), 0);
}

void WindowEngine::frame_reset() {
  std::fill(line_1_.begin(), line_1_.end(), 0);
  std::fill(line_2_.begin(), line_2_.end(), 0);
  line_pos_ = 0;
  taps_ = {};
  align_ = {};
  align_pos_ = 0;
  shifts_ = 0;
  pixels_fed_ = 0;
  windows_emitted_ = 0;
}

std::optional<Window3x3> WindowEngine::feed(std::uint8_t pixel) {
  if (pixels_fed_ >= total_) {
    throw std::overflow_error("WindowEngine: pixel fed past the end of the frame");
  }
  ++pixels_fed_;
  return shift(pixel);
}

std::optional<Window3x3> WindowEngine::drain_step() {
  if (!draining()) throw std::logic_error("WindowEngine: drain_step outside the drain phase");
  return shift(0);
}

std::optional<Window3x3> WindowEngine::shift(std::uint8_t pixel) {
  const std::size_t width = static_cast<std::size_t>(geometry_.width);

  // Cascade: buffer 1 delays by one row, buffer 2 by two.
  const std::uint8_t two_rows_up = line_2_[line_pos_];
  const std::uint8_t one_row_up = line_1_[line_pos_];
  line_2_[line_pos_] = one_row_up;
  line_1_[line_pos_] = pixel;
  line_pos_ = line_pos_ + 1 == width ? 0 : line_pos_ + 1;

  for (auto& r : taps_) {
    r[0] = r[1];
    r[1] = r[2];
  }
  taps_[0][2] = two_rows_up;
  taps_[1][2] = one_row_up;
  taps_[2][2] = pixel;

  // The newest pixel has raster index `shifts_`; the taps are centered one
  // row and one column behind it.
  const std::ptrdiff_t newest = static_cast<std::ptrdiff_t>(shifts_);
  ++shifts_;
  const std::ptrdiff_t center = newest - static_cast<std::ptrdiff_t>(width) - 1;

  std::optional<Window3x3> formed;
  if (center >= 0 && static_cast<std::size_t>(center) < total_) {
    Window3x3 w;
    w.row = static_cast<int>(center / static_cast<std::ptrdiff_t>(width));
    w.col = static_cast<int>(center % static_cast<std::ptrdiff_t>(width));
    for (int i = 0; i < 3; ++i) {
      const int r = w.row - 1 + i;
      const bool row_ok = r >= 0 && r < geometry_.height;
      for (int j = 0; j < 3; ++j) {
        const int c = w.col - 1 + j;
        const bool ok = row_ok && c >= 0 && c < geometry_.width;
        w.taps[static_cast<std::size_t>(3 * i + j)] = ok ? taps_[i][j] : 0;
      }
    }
    formed = w;
  }

  std::optional<Window3x3> out = std::move(align_[align_pos_]);
  align_[align_pos_] = std::move(formed);
  align_pos_ = (align_pos_ + 1) % kAlignmentDepth;
  if (out) ++windows_emitted_;
  return out;
}

LineBufferState WindowEngine::state() const {
  LineBufferState s;
  const std::size_t width = line_1_.size();
  const std::size_t in_1 = std::min(shifts_, width);
  const std::size_t in_2 = shifts_ > width ? std::min(shifts_ - width, width) : 0;
  // line_pos_ is the oldest slot once a buffer is full.
  auto ordered = [&](const std::vector<std::uint8_t>& buf, std::size_t count) {
    std::vector<std::uint8_t> out;
    out.reserve(count);
    for (std::size_t k = width - count; k < width; ++k) out.push_back(buf[(line_pos_ + k) % width]);
    return out;
  };
  s.row_buffer_1 = ordered(line_1_, in_1);
  s.row_buffer_2 = ordered(line_2_, in_2);
  s.shift_taps = taps_;
  s.fill_count = pixels_fed_;
  s.cursor_row = static_cast<int>(pixels_fed_ / width);
  s.cursor_col = static_cast<int>(pixels_fed_ % width);
  return s;
}

}  // namespace lanepipe
