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

#ifndef SYNTHVOL_BLUR_HPP_
#define SYNTHVOL_BLUR_HPP_

#include <vector>

#include "synthvol/grid.hpp"

namespace synthvol {

/// Sampled Gaussian truncated at +-ceil(4 sigma) and renormalized to unit
/// sum. Element i corresponds to offset i - radius.
std::vector<double> gaussian_kernel(double sigma);

/// Maps any integer onto [0, n) with half-sample symmetric reflection
/// (d c b a | a b c d | d c b a), repeating with period 2n.
int reflect_index(int i, int n);

/// Inclusive rectangle of pixels.
struct PixelBox {
  int y0 = 0, x0 = 0, y1 = -1, x1 = -1;
  bool empty() const { return y1 < y0 || x1 < x0; }
};

/// Separable Gaussian blur with reflect padding. Throws ParameterError if
/// sigma <= 0.
RealGrid gaussian_blur(const RealGrid& input, double sigma);

/// Same result as gaussian_blur for an input that is zero outside `support`,
/// but only evaluates pixels the support can reach. Pixels outside that
/// reach are exactly zero in both.
RealGrid gaussian_blur_supported(const RealGrid& input, double sigma,
                                 PixelBox support);

}  // namespace synthvol

#endif  // SYNTHVOL_BLUR_HPP_
