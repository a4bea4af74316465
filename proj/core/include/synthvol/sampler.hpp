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

#ifndef SYNTHVOL_SAMPLER_HPP_
#define SYNTHVOL_SAMPLER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthvol/config.hpp"
#include "synthvol/rng.hpp"
#include "synthvol/types.hpp"

namespace synthvol {

/// Per label, in label order: g, s, d* = round(depth * U(d_star_range))
/// clamped to [1, depth], then pi ~ Bernoulli(pi_prob).
StructParams sample_struct_params(const DistributionConfig& dist, int k, int depth,
                                  RngStream& stream);

/// Per label, in label order: n_scales, n_scales weights on (lo, hi],
/// intensity, blur sigma. Background statistics are copied from `dist`.
AppearanceParams sample_app_params(const DistributionConfig& dist, int k, RngStream& stream);

struct PhiResult {
  LabelVolume labels;
  ImageVolume image;
};

/// Full mapping: labels = psi(seed, sp); image = gamma(labels, ap, render stream).
/// The labels never depend on `ap` or `render`.
PhiResult phi(const SeedMask& seed, const StructParams& sp, const AppearanceParams& ap,
              RngStream& render);

/// Everything drawn for one sample index, before any file is written.
struct GeneratedSample {
  std::uint64_t sample_index = 0;
  std::uint64_t master_seed = 0;
  Dims dims;
  SeedMask seed;
  StructParams struct_params;
  AppearanceParams app_params;
  PhiResult volumes;
};

/// Derives the "mask", "struct" and "app" streams of `sample_index` and
/// runs the whole pipeline. The mask stream draws H = W, D and K and then the
/// seed mask; the app stream draws the appearance parameters and then renders.
GeneratedSample generate_sample(const DistributionConfig& dist, std::uint64_t master_seed,
                                std::uint64_t sample_index);

enum class OutputFormat { kNifti, kRaw, kBoth };
std::string to_string(OutputFormat format);
OutputFormat output_format_from_string(const std::string& text);

struct SampleRecord {
  std::uint64_t sample_index = 0;
  std::uint64_t master_seed = 0;
  bool ok = false;
  std::string error;
  Dims dims;
  int k = 0;
  StructParams struct_params;
  AppearanceParams app_params;
  std::string seed_mask_digest;
  std::string image_path;  // relative to the output directory
  std::string label_path;
  std::string image_digest;  // digest of the file at image_path
  std::string label_digest;
  double elapsed_ms = 0.0;
  std::string finished_at;  // UTC, ISO-8601
};

/// Manifest line. Timing metadata lives under the "timing" key so that
/// manifests compare equal across runs once that key is dropped.
nlohmann::json record_to_json(const SampleRecord& record);
SampleRecord record_from_json(const nlohmann::json& j);

struct RunOptions {
  std::filesystem::path out_dir;
  std::uint64_t master_seed = 0;
  std::uint64_t start_index = 0;
  std::uint64_t count = 1;
  int jobs = 1;
  OutputFormat format = OutputFormat::kNifti;
};

struct DatasetResult {
  std::vector<SampleRecord> records;  // ordered by sample index
  std::size_t failures = 0;
  std::filesystem::path manifest_path;
  std::filesystem::path run_path;
};

/// File stem of a sample inside the output directory: "sample_000042".
std::string sample_stem(std::uint64_t sample_index);

/// run.json document: the fully resolved config plus run identity.
nlohmann::json run_document(const DistributionConfig& dist, const RunOptions& options);

/// Generates samples [start_index, start_index + count) on `jobs` workers and
/// writes volumes, manifest.jsonl and run.json into out_dir. Output files are
/// a function of (dist, master_seed, sample_index) only. A sample that fails
/// is recorded with ok = false and the batch continues.
DatasetResult generate_dataset(const DistributionConfig& dist, const RunOptions& options);

}  // namespace synthvol

#endif  // SYNTHVOL_SAMPLER_HPP_
