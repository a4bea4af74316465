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

#include "synthvol/sampler.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

#include "synthvol/appearance.hpp"
#include "synthvol/digest.hpp"
#include "synthvol/error.hpp"
#include "synthvol/morphology.hpp"
#include "synthvol/seedmask.hpp"
#include "synthvol/volio.hpp"

namespace synthvol {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr char kManifestName[] = "manifest.jsonl";
constexpr char kRunName[] = "run.json";

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string seed_mask_digest(const SeedMask& seed) {
  std::vector<std::uint8_t> bytes;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put32(static_cast<std::uint32_t>(seed.height()));
  put32(static_cast<std::uint32_t>(seed.width()));
  for (Label v : seed.labels().values()) {
    bytes.push_back(static_cast<std::uint8_t>(v & 0xFF));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  return content_digest(bytes);
}

// Appends records to manifest.jsonl in sample-index order regardless of the
// order in which workers finish.
class ManifestWriter {
 public:
  ManifestWriter(const fs::path& path, std::uint64_t first_index)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc), next_(first_index) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }

  void submit(SampleRecord record) {
    std::lock_guard lock(mutex_);
    pending_.emplace(record.sample_index, std::move(record));
    while (!pending_.empty() && pending_.begin()->first == next_) {
      out_ << record_to_json(pending_.begin()->second).dump() << '\n';
      pending_.erase(pending_.begin());
      ++next_;
    }
    out_.flush();
    if (!out_) throw IoError("write failure on " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
  std::mutex mutex_;
  std::uint64_t next_;
  std::map<std::uint64_t, SampleRecord> pending_;
};

void write_sample_files(const GeneratedSample& sample, const fs::path& out_dir,
                        OutputFormat format, SampleRecord& record) {
  const std::string stem = sample_stem(sample.sample_index);
  const auto& image = sample.volumes.image;
  const auto& labels = sample.volumes.labels;
  const auto image_header = VolumeHeader::for_volume(image);
  const auto label_header = VolumeHeader::for_volume(labels);

  if (format == OutputFormat::kNifti || format == OutputFormat::kBoth) {
    const auto image_bytes = encode_nifti(image);
    const auto label_bytes = encode_nifti(labels);
    record.image_path = stem + "_image.nii";
    record.label_path = stem + "_label.nii";
    write_file(out_dir / record.image_path, image_bytes);
    write_file(out_dir / record.label_path, label_bytes);
    record.image_digest = content_digest(image_bytes);
    record.label_digest = content_digest(label_bytes);
  }
  if (format == OutputFormat::kRaw || format == OutputFormat::kBoth) {
    write_raw_pair(image, image_header, out_dir / (stem + "_image"));
    write_raw_pair(labels, label_header, out_dir / (stem + "_label"));
    if (format == OutputFormat::kRaw) {
      record.image_path = stem + "_image.raw";
      record.label_path = stem + "_label.raw";
      record.image_digest = content_digest(encode_raw(image));
      record.label_digest = content_digest(encode_raw(labels));
    }
  }
}

void remove_sample_files(const fs::path& out_dir, std::uint64_t index) {
  const std::string stem = sample_stem(index);
  for (const char* suffix : {"_image.nii", "_label.nii", "_image.raw", "_image.json",
                             "_label.raw", "_label.json"}) {
    std::error_code ignored;
    const fs::path p = out_dir / (stem + suffix);
    if (fs::is_regular_file(p, ignored)) fs::remove(p, ignored);
  }
}

SampleRecord run_one(const DistributionConfig& dist, const RunOptions& options,
                     std::uint64_t index) {
  const auto start = std::chrono::steady_clock::now();
  SampleRecord record;
  record.sample_index = index;
  record.master_seed = options.master_seed;
  try {
    const GeneratedSample sample = generate_sample(dist, options.master_seed, index);
    record.dims = sample.dims;
    record.k = sample.seed.k_max();
    record.struct_params = sample.struct_params;
    record.app_params = sample.app_params;
    record.seed_mask_digest = seed_mask_digest(sample.seed);
    write_sample_files(sample, options.out_dir, options.format, record);
    record.ok = true;
  } catch (const std::exception& e) {
    record.ok = false;
    record.error = e.what();
    remove_sample_files(options.out_dir, index);
    spdlog::error("sample {} failed: {}", index, e.what());
  }
  record.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  record.finished_at = utc_now();
  spdlog::debug("sample {} finished in {:.1f} ms", index, record.elapsed_ms);
  return record;
}

}  // namespace

StructParams sample_struct_params(const DistributionConfig& dist, int k, int depth,
                                  RngStream& stream) {
  if (depth < 2) throw ParameterError("sample_struct_params: depth must be at least 2");
  StructParams params;
  params.depth = depth;
  params.per_label.reserve(k);
  for (int l = 0; l < k; ++l) {
    LabelStructParams p;
    p.dilations = draw_uniform_int(stream, dist.g_range.lo, dist.g_range.hi);
    p.erosions = draw_uniform_int(stream, dist.s_range.lo, dist.s_range.hi);
    const double fraction = draw_uniform(stream, dist.d_star_range.lo, dist.d_star_range.hi);
    p.transition = std::clamp(static_cast<int>(std::round(depth * fraction)), 1, depth);
    p.evolves = draw_bernoulli(stream, dist.pi_prob);
    params.per_label.push_back(p);
  }
  return params;
}

AppearanceParams sample_app_params(const DistributionConfig& dist, int k, RngStream& stream) {
  AppearanceParams params;
  params.per_label.reserve(k);
  for (int l = 0; l < k; ++l) {
    LabelAppearance p;
    p.n_scales = draw_uniform_int(stream, dist.n_scales_range.lo, dist.n_scales_range.hi);
    p.weights.clear();
    for (int i = 0; i < p.n_scales; ++i) {
      // 1 - U[0, 1) lies in (0, 1], so the weight lies in (lo, hi].
      const double u = 1.0 - stream.next_unit();
      p.weights.push_back(dist.weight_range.lo + (dist.weight_range.hi - dist.weight_range.lo) * u);
    }
    p.intensity = draw_uniform(stream, dist.intensity_range.lo, dist.intensity_range.hi);
    p.blur_sigma = draw_uniform(stream, dist.sigma_range.lo, dist.sigma_range.hi);
    params.per_label.push_back(std::move(p));
  }
  params.bg_mean = dist.bg_mean;
  params.bg_sd = dist.bg_sd;
  params.bg_perturb_sd = dist.bg_perturb_sd;
  params.noise_sd = dist.noise_sd;
  params.background_mode = dist.background_mode;
  return params;
}

PhiResult phi(const SeedMask& seed, const StructParams& sp, const AppearanceParams& ap,
              RngStream& render) {
  if (static_cast<int>(ap.per_label.size()) != seed.k_max()) {
    throw ParameterError("phi: appearance parameters do not match the seed label count");
  }
  PhiResult result;
  result.labels = psi(seed, sp);
  result.image = gamma(result.labels, ap, render);
  return result;
}

GeneratedSample generate_sample(const DistributionConfig& dist, std::uint64_t master_seed,
                                std::uint64_t sample_index) {
  dist.validate();
  RngStream mask_stream = derive_stream(master_seed, sample_index, "mask");
  RngStream struct_stream = derive_stream(master_seed, sample_index, "struct");
  RngStream app_stream = derive_stream(master_seed, sample_index, "app");

  GeneratedSample sample;
  sample.sample_index = sample_index;
  sample.master_seed = master_seed;
  const int hw_pick =
      draw_uniform_int(mask_stream, 0, static_cast<int>(dist.hw_choices.size()) - 1);
  const int hw = dist.hw_choices[hw_pick];
  const int depth = draw_uniform_int(mask_stream, dist.depth_range.lo, dist.depth_range.hi);
  const int k = draw_uniform_int(mask_stream, dist.k_range.lo, dist.k_range.hi);
  sample.dims = {hw, hw, depth};

  SeedMaskConfig mask_config;
  mask_config.height = hw;
  mask_config.width = hw;
  mask_config.k_clusters = k;
  mask_config.coherence_sigma = dist.coherence_sigma;
  mask_config.background_fraction = dist.background_fraction;
  sample.seed = generate_seed_mask(mask_config, mask_stream);

  sample.struct_params = sample_struct_params(dist, k, depth, struct_stream);
  sample.app_params = sample_app_params(dist, k, app_stream);
  sample.volumes = phi(sample.seed, sample.struct_params, sample.app_params, app_stream);
  return sample;
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kNifti: return "nifti";
    case OutputFormat::kRaw: return "raw";
    case OutputFormat::kBoth: return "both";
  }
  return "nifti";
}

OutputFormat output_format_from_string(const std::string& text) {
  if (text == "nifti") return OutputFormat::kNifti;
  if (text == "raw") return OutputFormat::kRaw;
  if (text == "both") return OutputFormat::kBoth;
  throw ParameterError("unknown output format '" + text + "'");
}

json record_to_json(const SampleRecord& r) {
  json j;
  j["sample_index"] = r.sample_index;
  j["master_seed"] = r.master_seed;
  j["status"] = r.ok ? "ok" : "failed";
  if (!r.ok) {
    j["error"] = r.error;
  } else {
    j["dims"] = {{"height", r.dims.height}, {"width", r.dims.width}, {"depth", r.dims.depth}};
    j["k"] = r.k;
    j["struct_params"] = r.struct_params;
    j["app_params"] = r.app_params;
    j["seed_mask_digest"] = r.seed_mask_digest;
    j["output_paths"] = {{"image", r.image_path}, {"label", r.label_path}};
    j["digests"] = {{"image", r.image_digest}, {"label", r.label_digest}};
  }
  j["timing"] = {{"elapsed_ms", r.elapsed_ms}, {"finished_at", r.finished_at}};
  return j;
}

SampleRecord record_from_json(const json& j) {
  SampleRecord r;
  r.sample_index = j.at("sample_index").get<std::uint64_t>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.ok = j.at("status").get<std::string>() == "ok";
  if (!r.ok) {
    r.error = j.value("error", std::string{});
  } else {
    const auto& d = j.at("dims");
    r.dims = {d.at("height").get<int>(), d.at("width").get<int>(), d.at("depth").get<int>()};
    r.k = j.at("k").get<int>();
    r.struct_params = j.at("struct_params").get<StructParams>();
    r.app_params = j.at("app_params").get<AppearanceParams>();
    r.seed_mask_digest = j.at("seed_mask_digest").get<std::string>();
    r.image_path = j.at("output_paths").at("image").get<std::string>();
    r.label_path = j.at("output_paths").at("label").get<std::string>();
    r.image_digest = j.at("digests").at("image").get<std::string>();
    r.label_digest = j.at("digests").at("label").get<std::string>();
  }
  if (j.contains("timing")) {
    r.elapsed_ms = j["timing"].value("elapsed_ms", 0.0);
    r.finished_at = j["timing"].value("finished_at", std::string{});
  }
  return r;
}

std::string sample_stem(std::uint64_t sample_index) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "sample_%06llu",
                static_cast<unsigned long long>(sample_index));
  return buf;
}

json run_document(const DistributionConfig& dist, const RunOptions& options) {
  json j;
  j["tool"] = "synthvol";
  j["master_seed"] = options.master_seed;
  j["start_index"] = options.start_index;
  j["count"] = options.count;
  j["format"] = to_string(options.format);
  j["config"] = dist;
  return j;
}

DatasetResult generate_dataset(const DistributionConfig& dist, const RunOptions& options) {
  dist.validate();
  if (options.count < 1) throw ParameterError("generate_dataset: count must be at least 1");
  if (options.jobs < 1) throw ParameterError("generate_dataset: jobs must be at least 1");

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec || !fs::is_directory(options.out_dir)) {
    throw IoError("cannot create output directory " + options.out_dir.string());
  }

  DatasetResult result;
  result.run_path = options.out_dir / kRunName;
  result.manifest_path = options.out_dir / kManifestName;
  const std::string run_text = run_document(dist, options).dump(2) + "\n";
  write_file(result.run_path, std::span<const std::uint8_t>(
                                  reinterpret_cast<const std::uint8_t*>(run_text.data()),
                                  run_text.size()));

  ManifestWriter manifest(result.manifest_path, options.start_index);
  result.records.resize(options.count);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::size_t> failures{0};
  std::mutex error_mutex;
  std::exception_ptr fatal;

  auto worker = [&] {
    while (true) {
      const std::uint64_t offset = next.fetch_add(1);
      if (offset >= options.count) return;
      SampleRecord record = run_one(dist, options, options.start_index + offset);
      if (!record.ok) failures.fetch_add(1);
      result.records[offset] = record;
      try {
        manifest.submit(std::move(record));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!fatal) fatal = std::current_exception();
        next.store(options.count);
        return;
      }
    }
  };

  const int workers =
      static_cast<int>(std::min<std::uint64_t>(options.jobs, options.count));
  spdlog::info("generating {} samples from index {} with {} worker(s) into {}",
               options.count, options.start_index, workers, options.out_dir.string());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);
  result.failures = failures.load();
  spdlog::info("done: {} ok, {} failed", options.count - result.failures, result.failures);
  return result;
}

}  // namespace synthvol
