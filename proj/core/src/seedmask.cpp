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

#include "synthvol/seedmask.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "synthvol/blur.hpp"
#include "synthvol/error.hpp"
#include "synthvol/resample.hpp"

namespace synthvol {

void SeedMaskConfig::validate() const {
  if (height < kMinSeedExtent || width < kMinSeedExtent) {
    throw ParameterError("seed mask: grid must be at least 8x8, got " +
                         std::to_string(height) + "x" + std::to_string(width));
  }
  if (k_clusters < 1 || k_clusters > std::numeric_limits<Label>::max()) {
    throw ParameterError("seed mask: k_clusters out of range");
  }
  if (!(coherence_sigma > 0.0) || !std::isfinite(coherence_sigma)) {
    throw ParameterError("seed mask: coherence_sigma must be positive");
  }
  if (!(background_fraction >= 0.0 && background_fraction < 1.0)) {
    throw ParameterError("seed mask: background_fraction must lie in [0, 1)");
  }
  if (max_fragments < 0) throw ParameterError("seed mask: max_fragments must be >= 0");
}

namespace {

struct Piece {
  Label label = 0;
  std::vector<std::int32_t> pixels;
};

std::vector<Piece> foreground_pieces(const Grid2D<Label>& labels) {
  const int h = labels.height();
  const int w = labels.width();
  const auto values = labels.values();
  std::vector<std::uint8_t> seen(values.size(), 0);
  std::vector<Piece> pieces;
  std::vector<std::int32_t> stack;
  for (std::int32_t start = 0; start < static_cast<std::int32_t>(values.size()); ++start) {
    if (seen[start] || values[start] == 0) continue;
    Piece piece{values[start], {}};
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::int32_t p = stack.back();
      stack.pop_back();
      piece.pixels.push_back(p);
      const int y = p / w;
      const int x = p % w;
      for (int yy = std::max(y - 1, 0); yy <= std::min(y + 1, h - 1); ++yy) {
        for (int xx = std::max(x - 1, 0); xx <= std::min(x + 1, w - 1); ++xx) {
          const std::int32_t q = yy * w + xx;
          if (!seen[q] && values[q] == piece.label) {
            seen[q] = 1;
            stack.push_back(q);
          }
        }
      }
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

Label absorbing_label(const Grid2D<Label>& labels, const Piece& piece) {
  const int h = labels.height();
  const int w = labels.width();
  std::map<Label, std::int64_t> contacts;
  for (std::int32_t p : piece.pixels) {
    const int y = p / w;
    const int x = p % w;
    for (int yy = std::max(y - 1, 0); yy <= std::min(y + 1, h - 1); ++yy) {
      for (int xx = std::max(x - 1, 0); xx <= std::min(x + 1, w - 1); ++xx) {
        const Label v = labels(yy, xx);
        if (v != piece.label && v != 0) ++contacts[v];
      }
    }
  }
  Label best = 0;
  std::int64_t best_count = 0;
  for (const auto& [label, count] : contacts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

void absorb_fragments(Grid2D<Label>& labels, int max_fragments) {
  if (max_fragments < 0) throw ParameterError("absorb_fragments: max_fragments must be >= 0");
  if (max_fragments == 0) return;
  // Each absorption merges a piece into a neighbour, so the total piece count
  // strictly decreases and the loop terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Piece> pieces = foreground_pieces(labels);
    std::map<Label, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < pieces.size(); ++i) by_label[pieces[i].label].push_back(i);
    for (auto& [label, ids] : by_label) {
      if (static_cast<int>(ids.size()) <= max_fragments) continue;
      std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return pieces[a].pixels.size() > pieces[b].pixels.size();
      });
      // Pieces absorbed into a neighbour that is itself surplus stay
      // detached for now; the next pass picks them up.
      for (std::size_t r = static_cast<std::size_t>(max_fragments); r < ids.size(); ++r) {
        const Piece& piece = pieces[ids[r]];
        const Label target = absorbing_label(labels, piece);
        for (std::int32_t p : piece.pixels) labels.values()[p] = target;
        changed = true;
      }
    }
  }
}

SeedMask generate_seed_mask(const SeedMaskConfig& config, RngStream& stream) {
  config.validate();
  const Extent2 extent{config.height, config.width};
  const Extent2 coarse = reduced_extent(extent, config.coherence_sigma, 4);

  RealGrid best(extent, -std::numeric_limits<double>::infinity());
  Grid2D<Label> labels(extent, 0);
  for (int k = 0; k < config.k_clusters; ++k) {
    RealGrid noise(coarse);
    for (double& v : noise.values()) v = draw_normal(stream, 0.0, 1.0);
    const RealGrid field =
        gaussian_blur(upsample_bilinear(noise, extent), config.coherence_sigma);
    auto f = field.values();
    auto b = best.values();
    auto l = labels.values();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] > b[i]) {
        b[i] = f[i];
        l[i] = static_cast<Label>(k + 1);
      }
    }
  }

  if (config.background_fraction > 0.0) {
    std::vector<double> sorted(best.values().begin(), best.values().end());
    const auto rank = std::min(
        sorted.size() - 1,
        static_cast<std::size_t>(std::floor(config.background_fraction *
                                            static_cast<double>(sorted.size()))));
    std::nth_element(sorted.begin(), sorted.begin() + rank, sorted.end());
    const double threshold = sorted[rank];
    auto b = best.values();
    auto l = labels.values();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < threshold) l[i] = 0;
    }
  }
  absorb_fragments(labels, config.max_fragments);
  return SeedMask(std::move(labels), config.k_clusters);
}

}  // namespace synthvol
