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

#include "synthvol/blur.hpp"

#include <algorithm>
#include <cmath>

#include "synthvol/error.hpp"

namespace synthvol {
namespace {

// One-dimensional pass over `line` (length n) writing positions [lo, hi].
void convolve_line(const double* line, int n, std::span<const double> kernel,
                   int lo, int hi, double* out, std::ptrdiff_t out_stride) {
  const int radius = static_cast<int>(kernel.size() / 2);
  for (int i = lo; i <= hi; ++i) {
    double sum = 0.0;
    if (i - radius >= 0 && i + radius < n) {
      const double* p = line + (i - radius);
      for (std::size_t k = 0; k < kernel.size(); ++k) sum += kernel[k] * p[k];
    } else {
      for (int k = -radius; k <= radius; ++k) {
        sum += kernel[k + radius] * line[reflect_index(i + k, n)];
      }
    }
    out[static_cast<std::ptrdiff_t>(i) * out_stride] = sum;
  }
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("gaussian kernel: sigma must be positive and finite");
  }
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * (k * k) / (sigma * sigma));
    kernel[k + radius] = w;
    total += w;
  }
  for (double& w : kernel) w /= total;
  return kernel;
}

int reflect_index(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

RealGrid gaussian_blur(const RealGrid& input, double sigma) {
  return gaussian_blur_supported(input, sigma,
                                 PixelBox{0, 0, input.height() - 1, input.width() - 1});
}

RealGrid gaussian_blur_supported(const RealGrid& input, double sigma,
                                 PixelBox support) {
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int h = input.height();
  const int w = input.width();
  RealGrid out(input.extent());
  support.y0 = std::max(support.y0, 0);
  support.x0 = std::max(support.x0, 0);
  support.y1 = std::min(support.y1, h - 1);
  support.x1 = std::min(support.x1, w - 1);
  if (support.empty() || h == 0 || w == 0) return out;

  const int ox0 = std::max(0, support.x0 - radius);
  const int ox1 = std::min(w - 1, support.x1 + radius);
  const int oy0 = std::max(0, support.y0 - radius);
  const int oy1 = std::min(h - 1, support.y1 + radius);

  RealGrid horizontal(input.extent());
  for (int y = support.y0; y <= support.y1; ++y) {
    convolve_line(input.row(y).data(), w, kernel, ox0, ox1, horizontal.row(y).data(), 1);
  }

  std::vector<double> column(h);
  for (int x = ox0; x <= ox1; ++x) {
    for (int y = 0; y < h; ++y) column[y] = horizontal(y, x);
    convolve_line(column.data(), h, kernel, oy0, oy1, &out(0, x), w);
  }
  return out;
}

}  // namespace synthvol
