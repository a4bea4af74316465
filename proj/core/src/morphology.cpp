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

#include "synthvol/morphology.hpp"

#include <algorithm>
#include <string>

#include "synthvol/error.hpp"

namespace synthvol {
namespace {

bool is_empty(const BinaryMask& mask) {
  const auto v = mask.values();
  return std::none_of(v.begin(), v.end(), [](std::uint8_t b) { return b != 0; });
}

bool is_full(const BinaryMask& mask) {
  const auto v = mask.values();
  return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b != 0; });
}

// The 3x3 square is separable: a 1x3 pass followed by a 3x1 pass. Outside
// pixels are 0, which is the identity of max and absorbing for min.
template <bool kDilate>
void step(const BinaryMask& in, BinaryMask& tmp, BinaryMask& out) {
  const int h = in.height();
  const int w = in.width();
  for (int y = 0; y < h; ++y) {
    const auto src = in.row(y);
    auto dst = tmp.row(y);
    for (int x = 0; x < w; ++x) {
      const std::uint8_t left = x > 0 ? src[x - 1] : 0;
      const std::uint8_t right = x + 1 < w ? src[x + 1] : 0;
      if constexpr (kDilate) {
        dst[x] = left | src[x] | right;
      } else {
        dst[x] = left & src[x] & right;
      }
    }
  }
  for (int y = 0; y < h; ++y) {
    const auto mid = tmp.row(y);
    auto dst = out.row(y);
    if constexpr (kDilate) {
      for (int x = 0; x < w; ++x) dst[x] = mid[x];
      if (y > 0) {
        const auto up = tmp.row(y - 1);
        for (int x = 0; x < w; ++x) dst[x] |= up[x];
      }
      if (y + 1 < h) {
        const auto down = tmp.row(y + 1);
        for (int x = 0; x < w; ++x) dst[x] |= down[x];
      }
    } else {
      if (y == 0 || y + 1 == h) {
        std::fill(dst.begin(), dst.end(), 0);
        continue;
      }
      const auto up = tmp.row(y - 1);
      const auto down = tmp.row(y + 1);
      for (int x = 0; x < w; ++x) dst[x] = up[x] & mid[x] & down[x];
    }
  }
}

template <bool kDilate>
BinaryMask iterate(const BinaryMask& mask, int iterations) {
  if (iterations < 0) throw ParameterError("morphology: iterations must be non-negative");
  BinaryMask current = mask;
  BinaryMask tmp(mask.extent());
  BinaryMask next(mask.extent());
  for (int i = 0; i < iterations; ++i) {
    // Empty masks are fixed points of both operations, full masks of dilation.
    if (is_empty(current) || (kDilate && is_full(current))) break;
    step<kDilate>(current, tmp, next);
    std::swap(current, next);
  }
  return current;
}

BinaryMask evolve_step(const BinaryMask& previous, const LabelStructParams& params,
                       int d) {
  if (!params.evolves) return previous;
  if (d < params.transition) return dilate(previous, params.dilations);
  return erode(previous, params.erosions);
}

void check_transition(const LabelStructParams& params, int depth) {
  if (depth < 1) throw ParameterError("evolve_label: depth must be positive");
  if (params.transition < 1 || params.transition > depth) {
    throw ParameterError("evolve_label: transition depth " +
                         std::to_string(params.transition) + " outside [1, " +
                         std::to_string(depth) + "]");
  }
  if (params.dilations < 0 || params.erosions < 0) {
    throw ParameterError("evolve_label: iteration counts must be non-negative");
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int iterations) {
  return iterate<true>(mask, iterations);
}

BinaryMask erode(const BinaryMask& mask, int iterations) {
  return iterate<false>(mask, iterations);
}

LabelStack evolve_label(const BinaryMask& initial, const LabelStructParams& params,
                        int depth, int label) {
  check_transition(params, depth);
  LabelStack stack;
  stack.label = label;
  stack.slices.reserve(depth);
  stack.slices.push_back(initial);
  for (int d = 2; d <= depth; ++d) {
    stack.slices.push_back(evolve_step(stack.slices.back(), params, d));
  }
  return stack;
}

LabelVolume composite_labels(std::span<const LabelStack> stacks) {
  if (stacks.empty()) throw ParameterError("composite_labels: no stacks");
  const auto depth = stacks.front().slices.size();
  if (depth == 0) throw ParameterError("composite_labels: empty stack");
  const Extent2 extent = stacks.front().slices.front().extent();
  for (std::size_t i = 0; i < stacks.size(); ++i) {
    const auto& s = stacks[i];
    if (s.label != static_cast<int>(i) + 1) {
      throw ParameterError("composite_labels: stacks must be labelled 1..K in order");
    }
    if (s.slices.size() != depth) {
      throw ParameterError("composite_labels: stack depths differ");
    }
    for (const auto& slice : s.slices) {
      if (slice.extent() != extent) {
        throw ParameterError("composite_labels: slice extents differ");
      }
    }
  }

  LabelVolume volume(Dims{extent.height, extent.width, static_cast<int>(depth)});
  for (std::size_t d = 0; d < depth; ++d) {
    auto out = volume.slice(static_cast<int>(d));
    for (const auto& s : stacks) {
      const auto bits = s.slices[d].values();
      const auto value = static_cast<Label>(s.label);
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (bits[i] && out[i] == 0) out[i] = value;
      }
    }
  }
  return volume;
}

LabelVolume psi(const SeedMask& seed, const StructParams& params) {
  params.validate(seed.k_max());
  const int k = seed.k_max();
  LabelVolume volume(Dims{seed.height(), seed.width(), params.depth});

  std::vector<BinaryMask> current;
  current.reserve(k);
  for (int label = 1; label <= k; ++label) {
    current.push_back(seed.indicator(static_cast<Label>(label)));
  }
  for (int d = 1; d <= params.depth; ++d) {
    auto out = volume.slice(d - 1);
    for (int label = 1; label <= k; ++label) {
      BinaryMask& mask = current[label - 1];
      if (d >= 2) mask = evolve_step(mask, params.per_label[label - 1], d);
      const auto bits = mask.values();
      const auto value = static_cast<Label>(label);
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (bits[i] && out[i] == 0) out[i] = value;
      }
    }
  }
  return volume;
}

}  // namespace synthvol
