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

#include "synthvol/resample.hpp"

#include <algorithm>
#include <cmath>

#include "synthvol/error.hpp"

namespace synthvol {
namespace {

struct Tap {
  int i0;
  int i1;
  double frac;
};

std::vector<Tap> axis_taps(int source_len, int target_len) {
  std::vector<Tap> taps(target_len);
  const double scale = static_cast<double>(source_len) / target_len;
  for (int t = 0; t < target_len; ++t) {
    double pos = (t + 0.5) * scale - 0.5;
    pos = std::clamp(pos, 0.0, static_cast<double>(source_len - 1));
    const int i0 = static_cast<int>(std::floor(pos));
    const int i1 = std::min(i0 + 1, source_len - 1);
    taps[t] = {i0, i1, pos - i0};
  }
  return taps;
}

}  // namespace

RealGrid upsample_bilinear(const RealGrid& source, Extent2 target) {
  if (source.height() < 1 || source.width() < 1 || target.height < 1 ||
      target.width < 1) {
    throw ParameterError("upsample_bilinear: empty grid");
  }
  const auto ys = axis_taps(source.height(), target.height);
  const auto xs = axis_taps(source.width(), target.width);
  RealGrid out(target);
  for (int y = 0; y < target.height; ++y) {
    const Tap& ty = ys[y];
    const auto r0 = source.row(ty.i0);
    const auto r1 = source.row(ty.i1);
    auto dst = out.row(y);
    for (int x = 0; x < target.width; ++x) {
      const Tap& tx = xs[x];
      const double top = r0[tx.i0] + (r0[tx.i1] - r0[tx.i0]) * tx.frac;
      const double bottom = r1[tx.i0] + (r1[tx.i1] - r1[tx.i0]) * tx.frac;
      dst[x] = top + (bottom - top) * ty.frac;
    }
  }
  return out;
}

Extent2 reduced_extent(Extent2 extent, double factor, int minimum) {
  if (!(factor > 0.0)) throw ParameterError("reduced_extent: factor must be positive");
  auto reduce = [&](int n) {
    return std::max(minimum, static_cast<int>(std::ceil(n / factor)));
  };
  return {reduce(extent.height), reduce(extent.width)};
}

}  // namespace synthvol
