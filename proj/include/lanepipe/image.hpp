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

#ifndef LANEPIPE_IMAGE_HPP_
#define LANEPIPE_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "lanepipe/rgb2gray.hpp"
#include "lanepipe/stream_core.hpp"

namespace lanepipe {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<PixelRgb> pixels;  // raster order

  RgbImage() = default;
  RgbImage(int w, int h, PixelRgb fill = {})
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  PixelRgb& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  const PixelRgb& at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  FrameGeometry geometry() const { return {width, height}; }
};

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Unreadable or malformed image files.
class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary PPM (P6, maxval 255).
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RgbImage& image);
// Binary PGM (P5, maxval 255).
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);
// 8-bit PNG of any color type, converted to RGB.
RgbImage read_png(const std::filesystem::path& path);
// Dispatches on the file signature (P6 or PNG).
RgbImage read_image(const std::filesystem::path& path);

}  // namespace lanepipe

#endif  // LANEPIPE_IMAGE_HPP_
