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

#ifndef SYNTHVOL_MORPHOLOGY_HPP_
#define SYNTHVOL_MORPHOLOGY_HPP_

#include <span>
#include <vector>

#include "synthvol/types.hpp"

namespace synthvol {

// Binary morphology with the full 3x3 structuring element. Pixels outside
// the grid count as background: dilation never wraps and erosion strips
// foreground that touches the border.

BinaryMask dilate(const BinaryMask& mask, int iterations);
BinaryMask erode(const BinaryMask& mask, int iterations);

/// Depth evolution of one label; slices[0] is slice d = 1.
struct LabelStack {
  int label = 0;
  std::vector<BinaryMask> slices;
};

/// Evolves `initial` over `depth` slices. With evolves == false every slice
/// repeats the initial mask; otherwise slice d (1-based, d >= 2) dilates the
/// previous slice `dilations` times while d < transition and erodes it
/// `erosions` times from the transition on.
LabelStack evolve_label(const BinaryMask& initial, const LabelStructParams& params,
                        int depth, int label = 0);

/// Slice-wise compositing with fixed priority: a voxel takes the smallest
/// label whose stack covers it, 0 if none does. Stacks must be labelled
/// 1..K in order and share extent and depth.
LabelVolume composite_labels(std::span<const LabelStack> stacks);

/// Label volume of a seed mask under the given structural parameters. Equal
/// to compositing the evolved indicator of every label, but evolves all
/// labels slice by slice without materializing the per-label stacks.
LabelVolume psi(const SeedMask& seed, const StructParams& params);

}  // namespace synthvol

#endif  // SYNTHVOL_MORPHOLOGY_HPP_
