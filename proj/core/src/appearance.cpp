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

#include "synthvol/appearance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "synthvol/blur.hpp"
#include "synthvol/error.hpp"
#include "synthvol/resample.hpp"

namespace synthvol {
namespace {

constexpr double kWeightQuantum = 0x1.0p32;

PixelBox bounding_box(const BinaryMask& mask) {
  PixelBox box{mask.height(), mask.width(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    const auto row = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) {
      if (row[x]) {
        box.y0 = std::min(box.y0, y);
        box.y1 = std::max(box.y1, y);
        box.x0 = std::min(box.x0, x);
        box.x1 = std::max(box.x1, x);
      }
    }
  }
  return box;
}

// out += intensity * texture * soften(mask, sigma)
void accumulate_label(RealGrid& out, const BinaryMask& mask, const TextureField& texture,
                      double intensity, double sigma);

}  // namespace

TextureField generate_texture(Extent2 extent, std::span<const double> weights,
                              double noise_sd, RngStream& stream) {
  if (weights.empty()) throw ParameterError("generate_texture: at least one scale required");
  if (!(noise_sd >= 0.0)) throw ParameterError("generate_texture: noise_sd must be >= 0");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParameterError("generate_texture: mixture weights must be positive");
    }
    total += w;
  }

  TextureField texture(extent, 0.0);
  auto out = texture.values();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double weight =
        std::nearbyint(weights[i] / total * kWeightQuantum) / kWeightQuantum;
    const double zoom = std::ldexp(1.0, static_cast<int>(i) + 1);
    RealGrid layer(reduced_extent(extent, zoom));
    for (double& v : layer.values()) v = draw_normal(stream, 0.0, noise_sd);
    const RealGrid up = upsample_bilinear(layer, extent);
    const auto src = up.values();
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += weight * src[p];
  }
  return texture;
}

RealGrid draw_background_level(Extent2 extent, double mean, double sd,
                               BackgroundMode mode, RngStream& stream) {
  if (mode == BackgroundMode::kPerSlice) {
    return RealGrid(extent, draw_normal(stream, mean, sd));
  }
  RealGrid level(extent);
  for (double& v : level.values()) v = draw_normal(stream, mean, sd);
  return level;
}

RealGrid perturb_background(const RealGrid& level, double perturb_sd, RngStream& stream) {
  RealGrid out(level.extent());
  const auto src = level.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::clamp(src[i] + draw_normal(stream, 0.0, perturb_sd), 0.0, 1.0);
  }
  return out;
}

RealGrid background_slice(Extent2 extent, double mean, double sd, double perturb_sd,
                          RngStream& stream, BackgroundMode mode) {
  if (!(sd >= 0.0) || !(perturb_sd >= 0.0)) {
    throw ParameterError("background_slice: standard deviations must be >= 0");
  }
  const RealGrid level = draw_background_level(extent, mean, sd, mode, stream);
  return perturb_background(level, perturb_sd, stream);
}

RealGrid soften_mask(const BinaryMask& mask, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("soften_mask: sigma must be positive");
  const PixelBox box = bounding_box(mask);
  RealGrid input(mask.extent(), 0.0);
  if (box.empty()) return input;
  const auto bits = mask.values();
  auto dst = input.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = bits[i] ? 1.0 : 0.0;
  RealGrid out = gaussian_blur_supported(input, sigma, box);
  for (double& v : out.values()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

RealGrid compose_slice(const RealGrid& background, std::span<const BinaryMask> masks,
                       std::span<const TextureField> textures,
                       std::span<const double> intensities,
                       std::span<const double> sigmas) {
  const std::size_t k = masks.size();
  if (textures.size() != k || intensities.size() != k || sigmas.size() != k) {
    throw ParameterError("compose_slice: per-label inputs differ in length");
  }
  for (std::size_t l = 0; l < k; ++l) {
    if (masks[l].extent() != background.extent() ||
        textures[l].extent() != background.extent()) {
      throw ParameterError("compose_slice: shape mismatch for label " +
                           std::to_string(l + 1));
    }
  }
  RealGrid out = background;
  for (std::size_t l = 0; l < k; ++l) {
    accumulate_label(out, masks[l], textures[l], intensities[l], sigmas[l]);
  }
  return out;
}

namespace {

void accumulate_label(RealGrid& out, const BinaryMask& mask, const TextureField& texture,
                      double intensity, double sigma) {
  const RealGrid soft = soften_mask(mask, sigma);
  const auto s = soft.values();
  const auto t = texture.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += intensity * t[i] * s[i];
}

}  // namespace

ImageVolume normalize_volume(const FloatVolume& volume) {
  const auto values = volume.values();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("normalize_volume: non-finite voxel value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ImageVolume out(volume.dims(), 0);
  if (values.empty() || !(hi > lo)) return out;
  const double range = hi - lo;
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double scaled = std::round(255.0 * (values[i] - lo) / range);
    dst[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  return out;
}

FloatVolume render_volume(const LabelVolume& labels, const AppearanceParams& params,
                          RngStream& stream) {
  params.validate();
  const Dims dims = labels.dims();
  const Extent2 extent = dims.slice_extent();
  const int k = static_cast<int>(params.per_label.size());
  const auto values = labels.values();
  const Label max_label =
      values.empty() ? Label{0} : *std::max_element(values.begin(), values.end());
  if (max_label > k) {
    throw ParameterError("render_volume: label " + std::to_string(max_label) +
                         " has no appearance parameters");
  }

  std::vector<TextureField> textures;
  std::vector<double> intensities;
  std::vector<double> sigmas;
  textures.reserve(k);
  for (const auto& p : params.per_label) {
    textures.push_back(generate_texture(extent, p.weights, params.noise_sd, stream));
    intensities.push_back(p.intensity);
    sigmas.push_back(p.blur_sigma);
  }

  std::vector<RealGrid> levels;
  levels.reserve(dims.depth);
  for (int d = 0; d < dims.depth; ++d) {
    levels.push_back(draw_background_level(extent, params.bg_mean, params.bg_sd,
                                           params.background_mode, stream));
  }
  std::vector<RealGrid> backgrounds;
  backgrounds.reserve(dims.depth);
  for (int d = 0; d < dims.depth; ++d) {
    backgrounds.push_back(perturb_background(levels[d], params.bg_perturb_sd, stream));
  }

  FloatVolume out(dims);
  std::vector<bool> present(k + 1);
  BinaryMask mask(extent);
  for (int d = 0; d < dims.depth; ++d) {
    const auto ys = labels.slice(d);
    std::fill(present.begin(), present.end(), false);
    for (Label v : ys) present[v] = true;
    // Slices are composed in label order; absent labels would add exact zeros.
    RealGrid slice = std::move(backgrounds[d]);
    for (int l = 1; l <= k; ++l) {
      if (!present[l]) continue;
      auto bits = mask.values();
      for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = ys[i] == l ? 1 : 0;
      accumulate_label(slice, mask, textures[l - 1], intensities[l - 1], sigmas[l - 1]);
    }
    out.set_slice(d, slice);
  }
  return out;
}

ImageVolume gamma(const LabelVolume& labels, const AppearanceParams& params,
                  RngStream& stream) {
  return normalize_volume(render_volume(labels, params, stream));
}

}  // namespace synthvol
