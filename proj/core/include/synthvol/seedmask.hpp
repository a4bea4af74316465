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

#ifndef SYNTHVOL_SEEDMASK_HPP_
#define SYNTHVOL_SEEDMASK_HPP_

#include "synthvol/rng.hpp"
#include "synthvol/types.hpp"

namespace synthvol {

struct SeedMaskConfig {
  int height = 256;
  int width = 256;
  int k_clusters = 12;
  double coherence_sigma = 16.0;     // smoothing scale in pixels
  double background_fraction = 0.2;  // target share of label-0 pixels
  int max_fragments = 3;             // 8-connected pieces kept per label; 0 keeps all

  void validate() const;
};

/// Generates a seed mask with spatially coherent clusters.
///
/// Each of the k_clusters labels gets an independent standard-normal field
/// at reduced resolution (ceil(extent / coherence_sigma), at least 4x4). The
/// fields are bilinearly upsampled, Gaussian-smoothed at coherence_sigma, and
/// every pixel takes the index of the largest field (ties go to the lower
/// label). Pixels whose winning value lies below the background_fraction
/// quantile of all winning values become background. Finally, each label
/// keeps only its max_fragments largest 8-connected pieces; smaller pieces
/// are absorbed by the foreground label they touch most (background when
/// they touch no other label). Labels may end up absent from the result.
SeedMask generate_seed_mask(const SeedMaskConfig& config, RngStream& stream);

/// Repeatedly absorbs every piece of a label beyond its max_fragments largest
/// 8-connected pieces into the neighbouring label it shares the most pixel
/// contacts with (foreground preferred, lowest label on ties), until every
/// label has at most max_fragments pieces. Background pixels never change.
void absorb_fragments(Grid2D<Label>& labels, int max_fragments);

}  // namespace synthvol

#endif  // SYNTHVOL_SEEDMASK_HPP_
