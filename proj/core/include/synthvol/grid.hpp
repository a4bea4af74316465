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

#ifndef SYNTHVOL_GRID_HPP_
#define SYNTHVOL_GRID_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace synthvol {

struct Extent2 {
  int height = 0;
  int width = 0;

  std::size_t area() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  friend bool operator==(const Extent2&, const Extent2&) = default;
};

struct Dims {
  int height = 0;
  int width = 0;
  int depth = 0;

  Extent2 slice_extent() const { return {height, width}; }
  std::size_t slice_size() const { return slice_extent().area(); }
  std::size_t voxel_count() const {
    return slice_size() * static_cast<std::size_t>(depth);
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dense H x W grid stored row-major (x fastest).
template <typename T>
class Grid2D {
 public:
  using value_type = T;

  Grid2D() = default;
  explicit Grid2D(Extent2 extent, T fill = T{})
      : extent_(extent), data_(extent.area(), fill) {}
  Grid2D(int height, int width, T fill = T{})
      : Grid2D(Extent2{height, width}, fill) {}

  int height() const { return extent_.height; }
  int width() const { return extent_.width; }
  Extent2 extent() const { return extent_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int y, int x) {
    assert(y >= 0 && y < extent_.height && x >= 0 && x < extent_.width);
    return data_[static_cast<std::size_t>(y) * extent_.width + x];
  }
  const T& operator()(int y, int x) const {
    assert(y >= 0 && y < extent_.height && x >= 0 && x < extent_.width);
    return data_[static_cast<std::size_t>(y) * extent_.width + x];
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::span<T> row(int y) {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(y) * extent_.width,
                                       extent_.width);
  }
  std::span<const T> row(int y) const {
    return std::span<const T>(data_).subspan(
        static_cast<std::size_t>(y) * extent_.width, extent_.width);
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  Extent2 extent_{};
  std::vector<T> data_;
};

/// H x W x D volume. Each slice is row-major and slices are contiguous, so
/// the linear order is x fastest, then y, then d.
template <typename T>
class Volume {
 public:
  using value_type = T;

  Volume() = default;
  explicit Volume(Dims dims, T fill = T{})
      : dims_(dims), data_(dims.voxel_count(), fill) {}

  const Dims& dims() const { return dims_; }
  int height() const { return dims_.height; }
  int width() const { return dims_.width; }
  int depth() const { return dims_.depth; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int y, int x, int d) { return data_[index(y, x, d)]; }
  const T& operator()(int y, int x, int d) const { return data_[index(y, x, d)]; }

  std::span<T> slice(int d) {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(d) * dims_.slice_size(),
                                       dims_.slice_size());
  }
  std::span<const T> slice(int d) const {
    return std::span<const T>(data_).subspan(
        static_cast<std::size_t>(d) * dims_.slice_size(), dims_.slice_size());
  }

  Grid2D<T> slice_grid(int d) const {
    Grid2D<T> out(dims_.slice_extent());
    auto src = slice(d);
    std::copy(src.begin(), src.end(), out.values().begin());
    return out;
  }
  void set_slice(int d, const Grid2D<T>& grid) {
    assert(grid.extent() == dims_.slice_extent());
    auto src = grid.values();
    std::copy(src.begin(), src.end(), slice(d).begin());
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  std::size_t index(int y, int x, int d) const {
    assert(y >= 0 && y < dims_.height && x >= 0 && x < dims_.width && d >= 0 &&
           d < dims_.depth);
    return (static_cast<std::size_t>(d) * dims_.height + y) * dims_.width + x;
  }

  Dims dims_{};
  std::vector<T> data_;
};

using BinaryMask = Grid2D<std::uint8_t>;
using RealGrid = Grid2D<double>;

}  // namespace synthvol

#endif  // SYNTHVOL_GRID_HPP_
