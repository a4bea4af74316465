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

#ifndef SYNTHVOL_TYPES_HPP_
#define SYNTHVOL_TYPES_HPP_

#include <cstdint>
#include <vector>

#include "synthvol/grid.hpp"

namespace synthvol {

using Label = std::uint16_t;
using LabelVolume = Volume<Label>;
/// Rendered intensities before 8-bit normalization.
using FloatVolume = Volume<double>;
/// Normalized 8-bit image, every voxel in [0, 255].
using ImageVolume = Volume<std::uint8_t>;

inline constexpr int kMinSeedExtent = 8;

/// 2D multiclass label grid from which a whole 3D sample is extrapolated.
/// Label 0 is background; foreground labels are 1..k_max.
class SeedMask {
 public:
  SeedMask() = default;
  /// Throws ParameterError if the grid is smaller than 8x8 or any value
  /// exceeds k_max.
  SeedMask(Grid2D<Label> labels, int k_max);

  int height() const { return labels_.height(); }
  int width() const { return labels_.width(); }
  int k_max() const { return k_max_; }
  const Grid2D<Label>& labels() const { return labels_; }

  /// Indicator of label == value.
  BinaryMask indicator(Label value) const;

  friend bool operator==(const SeedMask&, const SeedMask&) = default;

 private:
  Grid2D<Label> labels_;
  int k_max_ = 0;
};

/// Morphological evolution controls of one label.
struct LabelStructParams {
  int dilations = 0;    // g: dilation iterations per slice
  int erosions = 0;     // s: erosion iterations per slice
  int transition = 1;   // d*: 1-based slice where erosion takes over
  bool evolves = false; // pi

  friend bool operator==(const LabelStructParams&, const LabelStructParams&) = default;
};

struct StructParams {
  int depth = 2;
  std::vector<LabelStructParams> per_label;

  /// Throws ParameterError on depth < 2, negative iteration counts, a
  /// transition outside [1, depth], or a label count different from k_max.
  void validate(int k_max) const;

  friend bool operator==(const StructParams&, const StructParams&) = default;
};

enum class BackgroundMode {
  kPerSlice,  // one scalar level per slice, heterogeneity from the perturbation
  kPerPixel,  // an independent level per pixel
};

struct LabelAppearance {
  int n_scales = 1;
  std::vector<double> weights{1.0};  // unnormalized mixture weights
  double intensity = 0.5;
  double blur_sigma = 2.0;

  friend bool operator==(const LabelAppearance&, const LabelAppearance&) = default;
};

struct AppearanceParams {
  std::vector<LabelAppearance> per_label;
  double bg_mean = 0.5;
  double bg_sd = 0.1;
  double bg_perturb_sd = 0.02;
  double noise_sd = 0.1;
  BackgroundMode background_mode = BackgroundMode::kPerSlice;

  void validate() const;

  friend bool operator==(const AppearanceParams&, const AppearanceParams&) = default;
};

}  // namespace synthvol

#endif  // SYNTHVOL_TYPES_HPP_
