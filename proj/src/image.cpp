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

#include "lanepipe/image.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

namespace lanepipe {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Netpbm header: magic, width, height, maxval, one whitespace byte.
struct PnmHeader {
  int width = 0;
  int height = 0;
  std::size_t data_offset = 0;
};

PnmHeader parse_pnm_header(const std::string& bytes, std::string_view magic,
                           const std::filesystem::path& path) {
  if (bytes.compare(0, 2, magic) != 0) {
    throw ImageIoError(path.string() + ": expected " + std::string(magic) + " file");
  }
  std::size_t pos = 2;
  auto next_int = [&]() {
    for (;;) {
      while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      throw ImageIoError(path.string() + ": malformed header");
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1'000'000) throw ImageIoError(path.string() + ": header value out of range");
      ++pos;
    }
    return static_cast<int>(v);
  };
  PnmHeader h;
  h.width = next_int();
  h.height = next_int();
  const int maxval = next_int();
  if (maxval != 255) throw ImageIoError(path.string() + ": only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ImageIoError(path.string() + ": malformed header");
  }
  h.data_offset = pos + 1;
  return h;
}

void write_bytes(const std::filesystem::path& path, const std::string& header,
                 const std::uint8_t* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageIoError("cannot write " + path.string());
  out << header;
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw ImageIoError("failed writing " + path.string());
}

}  // namespace

RgbImage read_ppm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const PnmHeader h = parse_pnm_header(bytes, "P6", path);
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  if (bytes.size() < h.data_offset + 3 * n) throw ImageIoError(path.string() + ": truncated pixel data");
  RgbImage img(h.width, h.height);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data() + h.data_offset + 3 * i);
    img.pixels[i] = {p[0], p[1], p[2]};
  }
  return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<std::uint8_t> data;
  data.reserve(image.pixels.size() * 3);
  for (const auto& p : image.pixels) {
    data.push_back(p.red);
    data.push_back(p.green);
    data.push_back(p.blue);
  }
  write_bytes(path, "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n",
              data.data(), data.size());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const PnmHeader h = parse_pnm_header(bytes, "P5", path);
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  if (bytes.size() < h.data_offset + n) throw ImageIoError(path.string() + ": truncated pixel data");
  GrayImage img(h.width, h.height);
  std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + h.data_offset), n, img.pixels.begin());
  return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  write_bytes(path, "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n",
              image.pixels.data(), image.pixels.size());
}

RgbImage read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw ImageIoError(path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw ImageIoError(path.string() + ": " + message);
  }
  RgbImage img(static_cast<int>(image.width), static_cast<int>(image.height));
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
  }
  return img;
}

RgbImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  static constexpr std::array<unsigned char, 8> kPng = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (in.gcount() == 8 && std::equal(kPng.begin(), kPng.end(), magic.begin(),
                                     [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
    return read_png(path);
  }
  return read_ppm(path);
}

}  // namespace lanepipe
