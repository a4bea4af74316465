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

#ifndef SYNTHVOL_RESAMPLE_HPP_
#define SYNTHVOL_RESAMPLE_HPP_

#include "synthvol/grid.hpp"

namespace synthvol {

/// Bilinear resampling to `target` using pixel-center alignment; samples that
/// fall outside the source are clamped to the edge.
RealGrid upsample_bilinear(const RealGrid& source, Extent2 target);

/// ceil(extent / factor) per axis, never below `minimum`.
Extent2 reduced_extent(Extent2 extent, double factor, int minimum = 1);

}  // namespace synthvol

#endif  // SYNTHVOL_RESAMPLE_HPP_
