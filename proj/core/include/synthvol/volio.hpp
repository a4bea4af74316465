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

#ifndef SYNTHVOL_VOLIO_HPP_
#define SYNTHVOL_VOLIO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "synthvol/types.hpp"

namespace synthvol {

enum class ValueKind {
  kImageU8,   // 1 byte per voxel
  kLabelU16,  // 2 bytes per voxel
};

int bytes_per_voxel(ValueKind kind);
std::string to_string(ValueKind kind);        // "u8-image" / "u16-label"
ValueKind value_kind_from_string(const std::string& text);

struct VolumeHeader {
  Dims dims;
  ValueKind kind = ValueKind::kImageU8;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};

  static VolumeHeader for_volume(const ImageVolume& v) { return {v.dims(), ValueKind::kImageU8}; }
  static VolumeHeader for_volume(const LabelVolume& v) { return {v.dims(), ValueKind::kLabelU16}; }
  friend bool operator==(const VolumeHeader&, const VolumeHeader&) = default;
};

using AnyVolume = std::variant<ImageVolume, LabelVolume>;

struct LoadedVolume {
  VolumeHeader header;
  AnyVolume volume;

  const ImageVolume& image() const;  // throws FormatError if this holds labels
  const LabelVolume& labels() const; // throws FormatError if this holds an image
};

inline constexpr std::size_t kNiftiHeaderSize = 348;
inline constexpr std::size_t kNiftiVoxOffset = 352;

// Single-file NIfTI-1 (.nii). Voxels are little-endian, x fastest, where x
// runs along the width of a slice (dim[1] = W, dim[2] = H, dim[3] = D).
// This is the in-memory order, so no reordering happens at the boundary.

std::vector<std::uint8_t> encode_nifti(const ImageVolume& volume);
std::vector<std::uint8_t> encode_nifti(const LabelVolume& volume);
/// `source` only names the data in diagnostics.
LoadedVolume decode_nifti(std::span<const std::uint8_t> bytes, const std::string& source);

void write_nifti(const ImageVolume& volume, const VolumeHeader& header,
                 const std::filesystem::path& path);
void write_nifti(const LabelVolume& volume, const VolumeHeader& header,
                 const std::filesystem::path& path);
LoadedVolume read_nifti(const std::filesystem::path& path);

// Raw payload plus JSON sidecar: <prefix>.raw and <prefix>.json.

std::vector<std::uint8_t> encode_raw(const ImageVolume& volume);
std::vector<std::uint8_t> encode_raw(const LabelVolume& volume);
std::string raw_sidecar_json(const VolumeHeader& header,
                             std::span<const std::uint8_t> payload);

void write_raw_pair(const ImageVolume& volume, const VolumeHeader& header,
                    const std::filesystem::path& prefix);
void write_raw_pair(const LabelVolume& volume, const VolumeHeader& header,
                    const std::filesystem::path& prefix);
/// Verifies the payload size and digest declared in the sidecar.
LoadedVolume read_raw_pair(const std::filesystem::path& prefix);

/// Reads `path` by extension: ".nii" as NIfTI, ".raw" or ".json" as a raw pair.
LoadedVolume read_volume(const std::filesystem::path& path);

/// Writes through a temporary sibling that is renamed into place, so a failed
/// write leaves no partial file. Throws IoError naming the path.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace synthvol

#endif  // SYNTHVOL_VOLIO_HPP_
