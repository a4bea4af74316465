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

#include "synthvol/types.hpp"

#include <cmath>
#include <string>

#include "synthvol/error.hpp"

namespace synthvol {

SeedMask::SeedMask(Grid2D<Label> labels, int k_max)
    : labels_(std::move(labels)), k_max_(k_max) {
  if (labels_.height() < kMinSeedExtent || labels_.width() < kMinSeedExtent) {
    throw ParameterError("seed mask must be at least 8x8");
  }
  if (k_max_ < 0) throw ParameterError("seed mask k_max must be non-negative");
  for (Label v : labels_.values()) {
    if (v > k_max_) {
      throw ParameterError("seed mask value " + std::to_string(v) + " exceeds k_max " +
                           std::to_string(k_max_));
    }
  }
}

BinaryMask SeedMask::indicator(Label value) const {
  BinaryMask mask(labels_.extent());
  auto src = labels_.values();
  auto dst = mask.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] == value ? 1 : 0;
  return mask;
}

void StructParams::validate(int k_max) const {
  if (depth < 2) throw ParameterError("struct params: depth must be at least 2");
  if (static_cast<int>(per_label.size()) != k_max) {
    throw ParameterError("struct params: expected " + std::to_string(k_max) +
                         " label records, got " + std::to_string(per_label.size()));
  }
  for (std::size_t i = 0; i < per_label.size(); ++i) {
    const auto& p = per_label[i];
    if (p.dilations < 0 || p.erosions < 0) {
      throw ParameterError("struct params: negative iteration count for label " +
                           std::to_string(i + 1));
    }
    if (p.transition < 1 || p.transition > depth) {
      throw ParameterError("struct params: transition depth out of [1, depth] for label " +
                           std::to_string(i + 1));
    }
  }
}

void AppearanceParams::validate() const {
  for (std::size_t i = 0; i < per_label.size(); ++i) {
    const auto& p = per_label[i];
    const std::string which = " for label " + std::to_string(i + 1);
    if (p.n_scales < 1 || p.n_scales > 4) {
      throw ParameterError("appearance params: n_scales outside [1, 4]" + which);
    }
    if (static_cast<int>(p.weights.size()) != p.n_scales) {
      throw ParameterError("appearance params: weight count differs from n_scales" + which);
    }
    for (double w : p.weights) {
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw ParameterError("appearance params: weights must be positive" + which);
      }
    }
    if (!(p.intensity >= 0.1 && p.intensity <= 0.9)) {
      throw ParameterError("appearance params: intensity outside [0.1, 0.9]" + which);
    }
    if (!(p.blur_sigma >= 2.0 && p.blur_sigma <= 8.0)) {
      throw ParameterError("appearance params: blur sigma outside [2, 8]" + which);
    }
  }
  if (!(bg_sd >= 0.0) || !(bg_perturb_sd >= 0.0) || !(noise_sd >= 0.0) ||
      !std::isfinite(bg_mean)) {
    throw ParameterError("appearance params: invalid background or noise statistics");
  }
}

}  // namespace synthvol
