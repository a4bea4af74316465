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

#ifndef SYNTHVOL_PREVIEW_HPP_
#define SYNTHVOL_PREVIEW_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "synthvol/types.hpp"

namespace synthvol {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}
  std::array<std::uint8_t, 3> at(int y, int x) const;
  void set(int y, int x, std::array<std::uint8_t, 3> color);
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Fixed overlay color of a foreground label.
std::array<std::uint8_t, 3> label_color(Label label);

/// Grayscale rendering of slice `d` (0-based) with label contours drawn in
/// their label color. A contour pixel is a foreground pixel with a
/// 4-neighbor inside the canvas that carries a different label.
RgbImage render_slice_overlay(const ImageVolume& image, const LabelVolume& labels, int d);

/// Tiles images left to right, top to bottom on a near-square grid.
RgbImage montage(std::span<const RgbImage> tiles);

void write_png(const RgbImage& image, const std::filesystem::path& path);
RgbImage read_png(const std::filesystem::path& path);

/// Writes `<prefix>_slice_NNN.png` for every requested 1-based slice plus
/// `<prefix>_montage.png`, and returns the written paths (montage last).
/// Throws ParameterError for an empty selection or a slice outside [1, D].
std::vector<std::filesystem::path> write_preview(const ImageVolume& image,
                                                 const LabelVolume& labels,
                                                 const std::filesystem::path& prefix,
                                                 std::span<const int> slices);

}  // namespace synthvol

#endif  // SYNTHVOL_PREVIEW_HPP_
