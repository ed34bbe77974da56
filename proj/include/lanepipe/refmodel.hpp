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

#ifndef LANEPIPE_REFMODEL_HPP_
#define LANEPIPE_REFMODEL_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "lanepipe/filters.hpp"
#include "lanepipe/image.hpp"
#include "lanepipe/lane_decision.hpp"
#include "lanepipe/rgb2gray.hpp"

// Whole-frame, non-streaming reference computations. Nothing in here reuses
// the window engine or the stage kernels.
namespace lanepipe::ref {

struct FloatFrame {
  int width = 0;
  int height = 0;
  std::vector<double> samples;

  double at(int row, int col) const { return samples[static_cast<std::size_t>(row) * width + col]; }
};

using Kernel3x3 = std::array<std::array<double, 3>, 3>;
using IntKernel3x3 = std::array<std::array<int, 3>, 3>;

inline constexpr Kernel3x3 kBoxKernel = {{{1.0 / 9, 1.0 / 9, 1.0 / 9},
                                          {1.0 / 9, 1.0 / 9, 1.0 / 9},
                                          {1.0 / 9, 1.0 / 9, 1.0 / 9}}};
inline constexpr IntKernel3x3 kSobelX = {{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
inline constexpr IntKernel3x3 kSobelY = {{{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}}};

// 0.2989 R + 0.587 G + 0.114 B, unquantized.
double gray_float(PixelRgb p);
// floor((w_r R + w_g G + w_b B) / 256) by integer division.
std::uint8_t gray_int(PixelRgb p, const GrayWeights& w = {});

FloatFrame to_float(const GrayImage& image);
FloatFrame gray_float_frame(const RgbImage& image);
GrayImage gray_int_frame(const RgbImage& image, const GrayWeights& w = {});

// Direct nested-loop correlation, stride 1, zero padding, same size.
FloatFrame conv2d_ref(const FloatFrame& frame, const Kernel3x3& kernel);
// Integer counterpart returning raw sums.
std::vector<int> conv2d_int(const GrayImage& frame, const IntKernel3x3& kernel);

// floor(box sum / 9) per pixel.
GrayImage average_int(const GrayImage& gray);
// |Gx| + |Gy| per pixel.
std::vector<unsigned> sobel_int(const GrayImage& avg);
GrayImage binarize_int(const std::vector<unsigned>& magnitudes, int width, int height, unsigned threshold);

struct PipelineOutput {
  GrayImage gray;
  GrayImage avg;
  std::vector<unsigned> magnitudes;
  GrayImage binary;
  LaneReport report;
};

PipelineOutput pipeline_ref(const RgbImage& image, unsigned sobel_threshold, const DecisionConfig& cfg,
                            const GrayWeights& weights = {});

}  // namespace lanepipe::ref

#endif  // LANEPIPE_REFMODEL_HPP_
