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

#ifndef SYNTHVOL_VALIDATE_HPP_
#define SYNTHVOL_VALIDATE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthvol/gof.hpp"
#include "synthvol/types.hpp"

namespace synthvol {

struct ValidationReport {
  std::filesystem::path image_path;
  std::filesystem::path label_path;
  Dims image_dims;
  Dims label_dims;
  int image_min = 0;
  int image_max = 0;
  Label label_max = 0;
  /// counts[l][d]: voxels of label l on slice d (0-based), l = 0..label_max.
  std::vector<std::vector<std::int64_t>> label_slice_counts;
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
};

/// Checks one image/label pair: matching dims, an image spanning exactly
/// [0, 255] (constant volumes are flagged), and labels within [0, k_max].
/// Without k_max the label range check is skipped. Throws FormatError or
/// IoError when a file cannot be read.
ValidationReport check_sample(const std::filesystem::path& image_path,
                              const std::filesystem::path& label_path,
                              std::optional<int> k_max = std::nullopt);

enum class Lifecycle { kGrowing, kShrinking, kGrowThenShrink, kStatic, kAbsent, kVanished };
std::string to_string(Lifecycle kind);

struct LabelLifecycle {
  Label label = 0;
  int first_slice = 0;  // 1-based; 0 when absent
  int last_slice = 0;
  std::vector<std::int64_t> area;  // per slice
  Lifecycle kind = Lifecycle::kAbsent;
};

/// Classifies a per-slice area curve.
///   absent: zero everywhere. vanished: present somewhere, gone on the last
///   slice. static: constant. Otherwise the curve is split at its first
///   maximum; the rise before it counts when at least 80% of its steps are
///   strict increases, the fall after it when any step decreases.
Lifecycle classify_area_curve(std::span<const std::int64_t> area);

/// Lifecycle of labels 1..k_max; k_max = 0 uses the largest label present.
std::vector<LabelLifecycle> structure_lifecycle(const LabelVolume& labels, int k_max = 0);

/// Lifecycle implied by one label's structural parameters alone, ignoring
/// occlusion by lower labels and canvas limits. `present` says whether the
/// label occurs in the seed mask.
Lifecycle predict_lifecycle(const LabelStructParams& params, int depth, bool present);

/// Whether an observed lifecycle is compatible with a predicted one. Equal
/// kinds agree; a structure predicted to shrink (alone or after growing) may
/// also be observed as vanished, since erosion can remove it entirely.
bool lifecycle_consistent(Lifecycle predicted, Lifecycle observed);

struct DatasetStats {
  std::size_t samples = 0;         // manifest records
  std::size_t failed_records = 0;  // records with status "failed"
  std::map<int, std::int64_t> label_count_histogram;
  std::map<std::string, std::int64_t> lifecycle_counts;
  std::map<std::string, std::int64_t> dims_histogram;  // "HxWxD"
  std::vector<double> intensities;                     // sorted
  std::optional<TestResult> intensity_ks;              // vs Uniform(0.1, 0.9)
  std::vector<std::string> missing_files;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Aggregates a manifest. Missing referenced files are listed, not fatal.
/// With write_reports, stats.json and stats.txt are written beside the
/// manifest. Throws IoError if the manifest itself is unreadable.
DatasetStats dataset_stats(const std::filesystem::path& manifest_path,
                           bool write_reports = true);

struct ManifestCheck {
  std::size_t checked = 0;
  /// (sample index, problem) for every failed check.
  std::vector<std::pair<std::uint64_t, std::string>> failures;
  DatasetStats stats;

  bool ok() const { return failures.empty(); }
};

/// check_sample on every record of a manifest, followed by dataset_stats.
ManifestCheck validate_manifest(const std::filesystem::path& manifest_path);

}  // namespace synthvol

#endif  // SYNTHVOL_VALIDATE_HPP_
