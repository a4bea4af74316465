// Copyright 2026 The synthvol Authors
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

#include "synthvol/preview.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "synthvol/error.hpp"

namespace synthvol {
namespace fs = std::filesystem;

std::array<std::uint8_t, 3> RgbImage::at(int y, int x) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

void RgbImage::set(int y, int x, std::array<std::uint8_t, 3> color) {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  rgb[i] = color[0];
  rgb[i + 1] = color[1];
  rgb[i + 2] = color[2];
}

std::array<std::uint8_t, 3> label_color(Label label) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 16> kPalette = {{
      {230, 25, 75},   {60, 180, 75},   {255, 225, 25},  {0, 130, 200},
      {245, 130, 48},  {145, 30, 180},  {70, 240, 240},  {240, 50, 230},
      {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
      {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {170, 255, 195},
  }};
  return kPalette[(label - 1) % kPalette.size()];
}

RgbImage render_slice_overlay(const ImageVolume& image, const LabelVolume& labels, int d) {
  if (image.dims() != labels.dims()) {
    throw ParameterError("preview: image and label dims differ");
  }
  if (d < 0 || d >= image.depth()) throw ParameterError("preview: slice out of range");
  const int h = image.height();
  const int w = image.width();
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t g = image(y, x, d);
      out.set(y, x, {g, g, g});
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Label l = labels(y, x, d);
      if (l == 0) continue;
      const bool edge = (x > 0 && labels(y, x - 1, d) != l) ||
                        (x + 1 < w && labels(y, x + 1, d) != l) ||
                        (y > 0 && labels(y - 1, x, d) != l) ||
                        (y + 1 < h && labels(y + 1, x, d) != l);
      if (edge) out.set(y, x, label_color(l));
    }
  }
  return out;
}

RgbImage montage(std::span<const RgbImage> tiles) {
  if (tiles.empty()) return {};
  const int n = static_cast<int>(tiles.size());
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  int tile_w = 0;
  int tile_h = 0;
  for (const auto& t : tiles) {
    tile_w = std::max(tile_w, t.width);
    tile_h = std::max(tile_h, t.height);
  }
  RgbImage out(cols * tile_w, rows * tile_h);
  for (int i = 0; i < n; ++i) {
    const int oy = (i / cols) * tile_h;
    const int ox = (i % cols) * tile_w;
    const auto& t = tiles[i];
    for (int y = 0; y < t.height; ++y) {
      for (int x = 0; x < t.width; ++x) out.set(oy + y, ox + x, t.at(y, x));
    }
  }
  return out;
}

void write_png(const RgbImage& image, const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.rgb.data(), 0, nullptr)) {
    const std::string reason = png.message;
    png_image_free(&png);
    throw IoError("cannot write " + path.string() + ": " + reason);
  }
}

RgbImage read_png(const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw IoError("cannot read " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  RgbImage out(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, out.rgb.data(), 0, nullptr)) {
    const std::string reason = png.message;
    png_image_free(&png);
    throw FormatError("cannot decode " + path.string() + ": " + reason);
  }
  return out;
}

std::vector<fs::path> write_preview(const ImageVolume& image, const LabelVolume& labels,
                                    const fs::path& prefix, std::span<const int> slices) {
  if (slices.empty()) throw ParameterError("preview: no slices requested");
  for (int d : slices) {
    if (d < 1 || d > image.depth()) {
      throw ParameterError("preview: slice " + std::to_string(d) + " outside [1, " +
                           std::to_string(image.depth()) + "]");
    }
  }
  std::vector<RgbImage> tiles;
  std::vector<fs::path> written;
  for (int d : slices) {
    tiles.push_back(render_slice_overlay(image, labels, d - 1));
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "_slice_%03d.png", d);
    fs::path path = prefix;
    path += suffix;
    write_png(tiles.back(), path);
    written.push_back(path);
  }
  fs::path montage_path = prefix;
  montage_path += "_montage.png";
  write_png(montage(tiles), montage_path);
  written.push_back(montage_path);
  return written;
}

}  // namespace synthvol
