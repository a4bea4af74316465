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

#ifndef SYNTHVOL_APPEARANCE_HPP_
#define SYNTHVOL_APPEARANCE_HPP_

#include <span>
#include <vector>

#include "synthvol/rng.hpp"
#include "synthvol/types.hpp"

namespace synthvol {

using TextureField = RealGrid;

/// Multi-scale noise texture: the weighted mean of `weights.size()` layers,
/// where layer i (1-based) is zero-mean Gaussian noise with standard
/// deviation noise_sd drawn at ceil(extent / 2^i) and bilinearly upsampled.
///
/// Normalized weights are rounded to multiples of 2^-32, which makes the
/// result bit-identical under any common positive scaling of `weights`.
TextureField generate_texture(Extent2 extent, std::span<const double> weights,
                              double noise_sd, RngStream& stream);

/// Background level(s) of one slice before perturbation. Per-slice mode
/// draws a single Normal(mean, sd) scalar; per-pixel mode draws one per pixel.
RealGrid draw_background_level(Extent2 extent, double mean, double sd,
                               BackgroundMode mode, RngStream& stream);

/// Adds per-pixel Normal(0, perturb_sd) noise to `level` and clips to [0, 1].
RealGrid perturb_background(const RealGrid& level, double perturb_sd, RngStream& stream);

/// One background slice: level draw followed by the perturbation.
RealGrid background_slice(Extent2 extent, double mean, double sd, double perturb_sd,
                          RngStream& stream,
                          BackgroundMode mode = BackgroundMode::kPerSlice);

/// Gaussian-softened copy of a binary mask, clamped to [0, 1].
RealGrid soften_mask(const BinaryMask& mask, double sigma);

/// background + sum_l intensity_l * texture_l * soften(mask_l, sigma_l),
/// element-wise and unclipped.
RealGrid compose_slice(const RealGrid& background, std::span<const BinaryMask> masks,
                       std::span<const TextureField> textures,
                       std::span<const double> intensities,
                       std::span<const double> sigmas);

/// Affine map of the volume range onto [0, 255] with round-half-away-from-zero.
/// A constant volume maps to all zeros. Throws DataError on non-finite input.
ImageVolume normalize_volume(const FloatVolume& volume);

/// Renders the unnormalized intensity volume. Draw order: textures for labels
/// 1..K, background levels for slices 1..D, then perturbation fields for
/// slices 1..D.
FloatVolume render_volume(const LabelVolume& labels, const AppearanceParams& params,
                          RngStream& stream);

/// render_volume followed by normalize_volume.
ImageVolume gamma(const LabelVolume& labels, const AppearanceParams& params,
                  RngStream& stream);

}  // namespace synthvol

#endif  // SYNTHVOL_APPEARANCE_HPP_
