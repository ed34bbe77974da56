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

#include "lanepipe/refmodel.hpp"

#include <cstdlib>

namespace lanepipe::ref {

double gray_float(PixelRgb p) { return 0.2989 * p.red + 0.587 * p.green + 0.114 * p.blue; }

std::uint8_t gray_int(PixelRgb p, const GrayWeights& w) {
  const int sum = w.red() * p.red + w.green() * p.green + w.blue() * p.blue;
  return static_cast<std::uint8_t>(sum / 256);
}

FloatFrame to_float(const GrayImage& image) {
  FloatFrame f{image.width, image.height, {}};
  f.samples.assign(image.pixels.begin(), image.pixels.end());
  return f;
}

FloatFrame gray_float_frame(const RgbImage& image) {
  FloatFrame f{image.width, image.height, {}};
  f.samples.reserve(image.pixels.size());
  for (const auto& p : image.pixels) f.samples.push_back(gray_float(p));
  return f;
}

GrayImage gray_int_frame(const RgbImage& image, const GrayWeights& w) {
  GrayImage g(image.width, image.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) g.pixels[i] = gray_int(image.pixels[i], w);
  return g;
}

FloatFrame conv2d_ref(const FloatFrame& frame, const Kernel3x3& kernel) {
  FloatFrame out{frame.width, frame.height, std::vector<double>(frame.samples.size(), 0.0)};
  for (int r = 0; r < frame.height; ++r) {
    for (int c = 0; c < frame.width; ++c) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const int rr = r - 1 + i;
          const int cc = c - 1 + j;
          if (rr < 0 || rr >= frame.height || cc < 0 || cc >= frame.width) continue;
          acc += kernel[i][j] * frame.at(rr, cc);
        }
      }
      out.samples[static_cast<std::size_t>(r) * frame.width + c] = acc;
    }
  }
  return out;
}

std::vector<int> conv2d_int(const GrayImage& frame, const IntKernel3x3& kernel) {
  std::vector<int> out(frame.pixels.size(), 0);
  for (int r = 0; r < frame.height; ++r) {
    for (int c = 0; c < frame.width; ++c) {
      int acc = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const int rr = r - 1 + i;
          const int cc = c - 1 + j;
          if (rr < 0 || rr >= frame.height || cc < 0 || cc >= frame.width) continue;
          acc += kernel[i][j] * frame.at(rr, cc);
        }
      }
      out[static_cast<std::size_t>(r) * frame.width + c] = acc;
    }
  }
  return out;
}

GrayImage average_int(const GrayImage& gray) {
  static constexpr IntKernel3x3 kOnes = {{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
  const auto sums = conv2d_int(gray, kOnes);
  GrayImage out(gray.width, gray.height);
  for (std::size_t i = 0; i < sums.size(); ++i) out.pixels[i] = static_cast<std::uint8_t>(sums[i] / 9);
  return out;
}

std::vector<unsigned> sobel_int(const GrayImage& avg) {
  const auto gx = conv2d_int(avg, kSobelX);
  const auto gy = conv2d_int(avg, kSobelY);
  std::vector<unsigned> out(gx.size());
  for (std::size_t i = 0; i < gx.size(); ++i) out[i] = static_cast<unsigned>(std::abs(gx[i]) + std::abs(gy[i]));
  return out;
}

GrayImage binarize_int(const std::vector<unsigned>& magnitudes, int width, int height, unsigned threshold) {
  GrayImage out(width, height);
  for (std::size_t i = 0; i < magnitudes.size(); ++i) out.pixels[i] = magnitudes[i] >= threshold ? 255 : 0;
  return out;
}

PipelineOutput pipeline_ref(const RgbImage& image, unsigned sobel_threshold, const DecisionConfig& cfg,
                            const GrayWeights& weights) {
  PipelineOutput out;
  out.gray = gray_int_frame(image, weights);
  out.avg = average_int(out.gray);
  out.magnitudes = sobel_int(out.avg);
  out.binary = binarize_int(out.magnitudes, image.width, image.height, sobel_threshold);
  out.report = decide(out.binary.pixels, image.geometry(), cfg);
  return out;
}

}  // namespace lanepipe::ref
