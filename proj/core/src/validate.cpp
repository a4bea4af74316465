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

#include "synthvol/validate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "synthvol/error.hpp"
#include "synthvol/sampler.hpp"
#include "synthvol/volio.hpp"

namespace synthvol {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string dims_string(const Dims& d) {
  return std::to_string(d.height) + "x" + std::to_string(d.width) + "x" +
         std::to_string(d.depth);
}

std::vector<json> read_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open manifest " + manifest_path.string());
  std::vector<json> lines;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw FormatError(manifest_path.string() + ": line " + std::to_string(number) +
                        ": invalid JSON: " + e.what());
    }
  }
  return lines;
}

}  // namespace

ValidationReport check_sample(const fs::path& image_path, const fs::path& label_path,
                              std::optional<int> k_max) {
  ValidationReport report;
  report.image_path = image_path;
  report.label_path = label_path;
  const LoadedVolume image_file = read_volume(image_path);
  const LoadedVolume label_file = read_volume(label_path);
  const ImageVolume& image = image_file.image();
  const LabelVolume& labels = label_file.labels();
  report.image_dims = image.dims();
  report.label_dims = labels.dims();

  if (image.dims() != labels.dims()) {
    report.issues.push_back("dims mismatch: image " + dims_string(image.dims()) + ", labels " +
                            dims_string(labels.dims()));
  }

  const auto [lo, hi] = std::minmax_element(image.values().begin(), image.values().end());
  report.image_min = *lo;
  report.image_max = *hi;
  if (report.image_min == report.image_max) {
    report.issues.push_back("constant volume (all voxels " + std::to_string(*lo) + ")");
  } else if (report.image_min != 0 || report.image_max != 255) {
    report.issues.push_back("intensity range [" + std::to_string(report.image_min) + ", " +
                            std::to_string(report.image_max) + "] is not [0, 255]");
  }

  const auto values = labels.values();
  report.label_max = *std::max_element(values.begin(), values.end());
  if (k_max && report.label_max > *k_max) {
    report.issues.push_back("label out of range: found " + std::to_string(report.label_max) +
                            ", K = " + std::to_string(*k_max));
  }

  report.label_slice_counts.assign(report.label_max + 1,
                                   std::vector<std::int64_t>(labels.depth(), 0));
  for (int d = 0; d < labels.depth(); ++d) {
    for (Label v : labels.slice(d)) ++report.label_slice_counts[v][d];
  }
  return report;
}

std::string to_string(Lifecycle kind) {
  switch (kind) {
    case Lifecycle::kGrowing: return "growing";
    case Lifecycle::kShrinking: return "shrinking";
    case Lifecycle::kGrowThenShrink: return "grow-then-shrink";
    case Lifecycle::kStatic: return "static";
    case Lifecycle::kAbsent: return "absent";
    case Lifecycle::kVanished: return "vanished";
  }
  return "absent";
}

Lifecycle classify_area_curve(std::span<const std::int64_t> area) {
  if (area.empty() || std::all_of(area.begin(), area.end(), [](auto a) { return a == 0; })) {
    return Lifecycle::kAbsent;
  }
  if (area.back() == 0) return Lifecycle::kVanished;
  if (std::all_of(area.begin(), area.end(), [&](auto a) { return a == area.front(); })) {
    return Lifecycle::kStatic;
  }
  const auto peak =
      static_cast<std::size_t>(std::max_element(area.begin(), area.end()) - area.begin());
  std::size_t increases = 0;
  for (std::size_t d = 0; d < peak; ++d) {
    if (area[d + 1] > area[d]) ++increases;
  }
  bool decreases = false;
  for (std::size_t d = peak; d + 1 < area.size(); ++d) {
    if (area[d + 1] < area[d]) decreases = true;
  }
  const bool grows = peak > 0 && 5 * increases >= 4 * peak;
  if (grows && decreases) return Lifecycle::kGrowThenShrink;
  if (grows) return Lifecycle::kGrowing;
  if (decreases && peak == 0) return Lifecycle::kShrinking;
  return area.back() > area.front() ? Lifecycle::kGrowing : Lifecycle::kShrinking;
}

std::vector<LabelLifecycle> structure_lifecycle(const LabelVolume& labels, int k_max) {
  const auto values = labels.values();
  if (k_max <= 0 && !values.empty()) {
    k_max = *std::max_element(values.begin(), values.end());
  }
  std::vector<LabelLifecycle> out(std::max(k_max, 0));
  for (int l = 0; l < k_max; ++l) {
    out[l].label = static_cast<Label>(l + 1);
    out[l].area.assign(labels.depth(), 0);
  }
  for (int d = 0; d < labels.depth(); ++d) {
    for (Label v : labels.slice(d)) {
      if (v >= 1 && v <= k_max) ++out[v - 1].area[d];
    }
  }
  for (auto& lc : out) {
    for (int d = 0; d < labels.depth(); ++d) {
      if (lc.area[d] > 0) {
        if (lc.first_slice == 0) lc.first_slice = d + 1;
        lc.last_slice = d + 1;
      }
    }
    lc.kind = classify_area_curve(lc.area);
  }
  return out;
}

Lifecycle predict_lifecycle(const LabelStructParams& params, int depth, bool present) {
  if (!present) return Lifecycle::kAbsent;
  if (!params.evolves) return Lifecycle::kStatic;
  // Dilation acts on slices 2..d*-1, erosion on slices max(d*, 2)..D.
  const bool grows = params.dilations > 0 && params.transition >= 3;
  const bool shrinks = params.erosions > 0 && depth >= 2;
  if (grows && shrinks) return Lifecycle::kGrowThenShrink;
  if (grows) return Lifecycle::kGrowing;
  if (shrinks) return Lifecycle::kShrinking;
  return Lifecycle::kStatic;
}

bool lifecycle_consistent(Lifecycle predicted, Lifecycle observed) {
  if (predicted == observed) return true;
  return observed == Lifecycle::kVanished &&
         (predicted == Lifecycle::kShrinking || predicted == Lifecycle::kGrowThenShrink);
}

json DatasetStats::to_json() const {
  json j;
  j["samples"] = samples;
  j["failed_records"] = failed_records;
  json hist = json::object();
  for (const auto& [k, n] : label_count_histogram) hist[std::to_string(k)] = n;
  j["label_count_histogram"] = hist;
  j["lifecycle_counts"] = lifecycle_counts;
  j["dims_histogram"] = dims_histogram;
  json ecdf = json::array();
  if (!intensities.empty()) {
    for (int i = 0; i <= 16; ++i) {
      const double x = 0.1 + 0.05 * i;
      const auto below = std::upper_bound(intensities.begin(), intensities.end(), x) -
                         intensities.begin();
      ecdf.push_back({{"x", x}, {"F", static_cast<double>(below) / intensities.size()}});
    }
  }
  j["intensity"] = {{"count", intensities.size()}, {"ecdf", ecdf}};
  if (intensity_ks) {
    j["intensity"]["ks_uniform_0.1_0.9"] = {{"statistic", intensity_ks->statistic},
                                            {"p_value", intensity_ks->p_value}};
  }
  j["missing_files"] = missing_files;
  return j;
}

std::string DatasetStats::to_text() const {
  std::ostringstream out;
  out << "samples: " << samples << " (" << failed_records << " failed)\n";
  out << "label count histogram:\n";
  for (const auto& [k, n] : label_count_histogram) out << "  K=" << k << ": " << n << "\n";
  out << "lifecycle classes:\n";
  for (const auto& [k, n] : lifecycle_counts) out << "  " << k << ": " << n << "\n";
  out << "volume dims:\n";
  for (const auto& [k, n] : dims_histogram) out << "  " << k << ": " << n << "\n";
  out << "intensity coefficients: " << intensities.size() << " values";
  if (intensity_ks) {
    out << ", KS vs U(0.1, 0.9): D = " << intensity_ks->statistic
        << ", p = " << intensity_ks->p_value;
  }
  out << "\n";
  if (!missing_files.empty()) {
    out << "missing files:\n";
    for (const auto& f : missing_files) out << "  " << f << "\n";
  }
  return out.str();
}

DatasetStats dataset_stats(const fs::path& manifest_path, bool write_reports) {
  const auto lines = read_manifest(manifest_path);
  const fs::path base = manifest_path.parent_path();
  DatasetStats stats;
  for (const auto& line : lines) {
    const SampleRecord record = record_from_json(line);
    ++stats.samples;
    if (!record.ok) {
      ++stats.failed_records;
      continue;
    }
    ++stats.label_count_histogram[record.k];
    ++stats.dims_histogram[dims_string(record.dims)];
    for (const auto& p : record.app_params.per_label) stats.intensities.push_back(p.intensity);

    const fs::path label_path = base / record.label_path;
    std::error_code ec;
    if (!fs::exists(label_path, ec)) {
      stats.missing_files.push_back(label_path.string());
      continue;
    }
    try {
      const LoadedVolume labels = read_volume(label_path);
      for (const auto& lc : structure_lifecycle(labels.labels(), record.k)) {
        ++stats.lifecycle_counts[to_string(lc.kind)];
      }
    } catch (const std::exception& e) {
      spdlog::warn("skipping lifecycle of {}: {}", label_path.string(), e.what());
    }
    if (!fs::exists(base / record.image_path, ec)) {
      stats.missing_files.push_back((base / record.image_path).string());
    }
  }
  std::sort(stats.intensities.begin(), stats.intensities.end());
  if (!stats.intensities.empty()) stats.intensity_ks = ks_uniform(stats.intensities, 0.1, 0.9);

  if (write_reports) {
    const std::string json_text = stats.to_json().dump(2) + "\n";
    const std::string text = stats.to_text();
    write_file(base / "stats.json",
               std::span(reinterpret_cast<const std::uint8_t*>(json_text.data()), json_text.size()));
    write_file(base / "stats.txt",
               std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  return stats;
}

ManifestCheck validate_manifest(const fs::path& manifest_path) {
  const auto lines = read_manifest(manifest_path);
  const fs::path base = manifest_path.parent_path();
  ManifestCheck check;
  for (const auto& line : lines) {
    SampleRecord record;
    try {
      record = record_from_json(line);
    } catch (const json::exception& e) {
      check.failures.emplace_back(0, std::string("malformed manifest record: ") + e.what());
      continue;
    }
    ++check.checked;
    if (!record.ok) {
      check.failures.emplace_back(record.sample_index, "generation failed: " + record.error);
      continue;
    }
    try {
      const auto report =
          check_sample(base / record.image_path, base / record.label_path, record.k);
      for (const auto& issue : report.issues) {
        check.failures.emplace_back(record.sample_index, issue);
      }
      if (report.ok() && report.image_dims != record.dims) {
        check.failures.emplace_back(record.sample_index, "dims differ from manifest record");
      }
    } catch (const std::exception& e) {
      check.failures.emplace_back(record.sample_index, e.what());
    }
  }
  check.stats = dataset_stats(manifest_path);
  return check;
}

}  // namespace synthvol
