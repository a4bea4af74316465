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

#ifndef SYNTHVOL_CONFIG_HPP_
#define SYNTHVOL_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthvol/types.hpp"

namespace synthvol {

struct IntRange {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const RealRange&, const RealRange&) = default;
};

/// Sampling distributions for every randomized quantity of a sample.
struct DistributionConfig {
  // [volume]
  std::vector<int> hw_choices{128, 256};  // H = W, picked uniformly
  IntRange depth_range{16, 64};
  IntRange k_range{10, 15};
  // [seedmask]
  double coherence_sigma = 16.0;
  double background_fraction = 0.2;
  // [struct]
  IntRange g_range{0, 2};
  IntRange s_range{0, 2};
  RealRange d_star_range{0.3, 0.9};  // fraction of depth
  double pi_prob = 0.8;
  // [appearance]
  IntRange n_scales_range{1, 4};
  RealRange weight_range{0.0, 1.0};  // drawn on (lo, hi]
  RealRange intensity_range{0.1, 0.9};
  RealRange sigma_range{2.0, 8.0};
  double bg_mean = 0.5;
  double bg_sd = 0.1;
  double bg_perturb_sd = 0.02;
  double noise_sd = 0.1;
  BackgroundMode background_mode = BackgroundMode::kPerSlice;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  friend bool operator==(const DistributionConfig&, const DistributionConfig&) = default;
};

/// Parses an INI document with [volume], [seedmask], [struct] and
/// [appearance] sections. Unset keys keep their defaults; unknown sections or
/// keys are errors. `source` names the document in diagnostics.
DistributionConfig parse_config_ini(const std::string& text, const std::string& source);

/// Loads a config file. ".json" files are read as run.json documents (the
/// "config" object); anything else as INI. Throws ConfigError when the file
/// is missing or invalid.
DistributionConfig load_config(const std::filesystem::path& path);

/// INI rendering with every key materialized; parses back to the same config.
std::string to_ini(const DistributionConfig& config);

std::string to_string(BackgroundMode mode);
BackgroundMode background_mode_from_string(const std::string& text);

void to_json(nlohmann::json& j, const DistributionConfig& c);
/// Strict: unknown keys throw ConfigError.
void from_json(const nlohmann::json& j, DistributionConfig& c);

void to_json(nlohmann::json& j, const StructParams& p);
void from_json(const nlohmann::json& j, StructParams& p);
void to_json(nlohmann::json& j, const AppearanceParams& p);
void from_json(const nlohmann::json& j, AppearanceParams& p);

}  // namespace synthvol

#endif  // SYNTHVOL_CONFIG_HPP_
