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

#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "synthvol/digest.hpp"
#include "synthvol/error.hpp"
#include "synthvol/morphology.hpp"
#include "synthvol/seedmask.hpp"
#include "synthvol/volio.hpp"

namespace synthvol {
namespace {

namespace fs = std::filesystem;

DistributionConfig small_config() {
  DistributionConfig c;
  c.hw_choices = {32};
  c.depth_range = {6, 6};
  c.k_range = {4, 4};
  c.coherence_sigma = 4.0;
  return c;
}

TEST(StructParams, DegenerateRanges) {
  DistributionConfig c;
  c.pi_prob = 0.0;
  c.g_range = {1, 1};
  c.s_range = {1, 1};
  RngStream s = derive_stream(1, 0, "struct");
  const StructParams p = sample_struct_params(c, 12, 20, s);
  ASSERT_EQ(p.per_label.size(), 12u);
  for (const auto& l : p.per_label) {
    EXPECT_FALSE(l.evolves);
    EXPECT_EQ(l.dilations, 1);
    EXPECT_EQ(l.erosions, 1);
    EXPECT_GE(l.transition, 1);
    EXPECT_LE(l.transition, 20);
  }
}

TEST(StructParams, EvolveFrequency) {
  DistributionConfig c;
  RngStream s = derive_stream(2, 0, "struct");
  const StructParams p = sample_struct_params(c, 1000, 40, s);
  int evolving = 0;
  for (const auto& l : p.per_label) evolving += l.evolves;
  EXPECT_NEAR(evolving / 1000.0, 0.8, 0.04);
}

TEST(AppParams, RangesAndMoments) {
  DistributionConfig c;
  RngStream s = derive_stream(3, 0, "app");
  const AppearanceParams p = sample_app_params(c, 10000, s);
  double intensity = 0, sigma = 0;
  std::set<int> scales;
  for (const auto& l : p.per_label) {
    ASSERT_GE(l.intensity, 0.1);
    ASSERT_LE(l.intensity, 0.9);
    ASSERT_GE(l.blur_sigma, 2.0);
    ASSERT_LE(l.blur_sigma, 8.0);
    ASSERT_EQ(l.weights.size(), static_cast<std::size_t>(l.n_scales));
    for (double w : l.weights) {
      ASSERT_GT(w, 0.0);
      ASSERT_LE(w, 1.0);
    }
    intensity += l.intensity;
    sigma += l.blur_sigma;
    scales.insert(l.n_scales);
  }
  EXPECT_NEAR(intensity / 10000, 0.5, 0.01);
  EXPECT_NEAR(sigma / 10000, 5.0, 0.07);
  EXPECT_EQ(scales, (std::set<int>{1, 2, 3, 4}));
  EXPECT_NO_THROW(p.validate());
}

struct Fixture {
  SeedMask seed;
  StructParams sp;
};

Fixture fixture(std::uint64_t index) {
  const DistributionConfig c = small_config();
  RngStream m = derive_stream(4, index, "mask");
  RngStream s = derive_stream(4, index, "struct");
  Fixture f;
  f.seed = generate_seed_mask({32, 32, 4, 4.0, 0.2}, m);
  f.sp = sample_struct_params(c, 4, 6, s);
  return f;
}

TEST(Phi, AppearanceVariationKeepsLabels) {
  const DistributionConfig c = small_config();
  const Fixture f = fixture(0);
  RngStream a1 = derive_stream(4, 0, "app");
  RngStream a2 = derive_stream(4, 1, "app");
  const AppearanceParams ap1 = sample_app_params(c, 4, a1);
  const AppearanceParams ap2 = sample_app_params(c, 4, a2);
  const PhiResult r1 = phi(f.seed, f.sp, ap1, a1);
  const PhiResult r2 = phi(f.seed, f.sp, ap2, a2);
  EXPECT_EQ(r1.labels, r2.labels);
  EXPECT_NE(r1.image, r2.image);
  EXPECT_EQ(r1.labels, psi(f.seed, f.sp));
}

TEST(Phi, StructuralVariationChangesLabels) {
  const Fixture f = fixture(0);
  StructParams grow = f.sp;
  for (auto& l : grow.per_label) l = {2, 0, grow.depth, true};
  StructParams still = f.sp;
  for (auto& l : still.per_label) l.evolves = false;
  AppearanceParams ap;
  ap.per_label.assign(4, LabelAppearance{});
  RngStream a = derive_stream(4, 0, "app");
  RngStream b = a;
  EXPECT_NE(phi(f.seed, grow, ap, a).labels, phi(f.seed, still, ap, b).labels);
}

TEST(Phi, MismatchedAppearanceRejected) {
  const Fixture f = fixture(1);
  AppearanceParams ap;
  ap.per_label.assign(3, LabelAppearance{});
  RngStream a(0, 0);
  EXPECT_THROW(phi(f.seed, f.sp, ap, a), ParameterError);
}

TEST(GenerateSample, DeterministicAndDimsFromConfig) {
  const DistributionConfig c = small_config();
  const GeneratedSample a = generate_sample(c, 9, 3);
  const GeneratedSample b = generate_sample(c, 9, 3);
  EXPECT_EQ(a.volumes.image, b.volumes.image);
  EXPECT_EQ(a.volumes.labels, b.volumes.labels);
  EXPECT_EQ(a.dims, (Dims{32, 32, 6}));
  EXPECT_EQ(a.volumes.image.dims(), a.dims);
  EXPECT_EQ(a.seed.k_max(), 4);
  EXPECT_EQ(a.volumes.labels.slice_grid(0), a.seed.labels());
  const GeneratedSample other = generate_sample(c, 9, 4);
  EXPECT_NE(a.volumes.image, other.volumes.image);
}

TEST(Records, JsonRoundTrip) {
  SampleRecord r;
  r.sample_index = 12;
  r.master_seed = 99;
  r.ok = true;
  r.dims = {8, 8, 4};
  r.k = 2;
  r.struct_params = {4, {{1, 1, 2, true}, {0, 2, 3, false}}};
  r.app_params.per_label = {{1, {1.0}, 0.5, 2.0}, {2, {0.5, 0.25}, 0.2, 7.5}};
  r.seed_mask_digest = "sha256:00";
  r.image_path = "a.nii";
  r.label_path = "b.nii";
  r.image_digest = "sha256:11";
  r.label_digest = "sha256:22";
  r.elapsed_ms = 3.5;
  r.finished_at = "2026-01-01T00:00:00Z";
  const SampleRecord back = record_from_json(record_to_json(r));
  EXPECT_EQ(record_to_json(back), record_to_json(r));

  SampleRecord failed;
  failed.sample_index = 3;
  failed.error = "boom";
  const auto j = record_to_json(failed);
  EXPECT_EQ(j["status"], "failed");
  EXPECT_EQ(record_from_json(j).error, "boom");
}

TEST(SampleStem, ZeroPadded) {
  EXPECT_EQ(sample_stem(7), "sample_000007");
  EXPECT_EQ(sample_stem(1234567), "sample_1234567");
}

std::vector<std::string> manifest_without_timing(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    j.erase("timing");
    lines.push_back(j.dump());
  }
  return lines;
}

TEST(GenerateDataset, WritesFilesManifestAndRun) {
  testing::TempDir dir("dataset");
  RunOptions opt;
  opt.out_dir = dir.path();
  opt.master_seed = 5;
  opt.start_index = 10;
  opt.count = 3;
  opt.format = OutputFormat::kBoth;
  const DatasetResult result = generate_dataset(small_config(), opt);
  EXPECT_EQ(result.failures, 0u);
  ASSERT_EQ(result.records.size(), 3u);
  const auto lines = manifest_without_timing(result.manifest_path);
  ASSERT_EQ(lines.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = result.records[i];
    EXPECT_EQ(r.sample_index, 10 + i);
    EXPECT_EQ(file_digest(dir.path() / r.image_path), r.image_digest);
    EXPECT_EQ(file_digest(dir.path() / r.label_path), r.label_digest);
    EXPECT_TRUE(fs::exists(dir.path() / (sample_stem(10 + i) + "_image.raw")));
    EXPECT_TRUE(fs::exists(dir.path() / (sample_stem(10 + i) + "_label.json")));
    // Regenerate from seed and index alone.
    const GeneratedSample again = generate_sample(small_config(), 5, 10 + i);
    EXPECT_EQ(read_nifti(dir.path() / r.image_path).image(), again.volumes.image);
  }
  const auto run = nlohmann::json::parse(std::ifstream(result.run_path));
  EXPECT_EQ(run["master_seed"], 5);
  EXPECT_EQ(run["config"].get<DistributionConfig>(), small_config());
}

TEST(GenerateDataset, WorkerCountDoesNotChangeOutput) {
  testing::TempDir one("jobs1"), many("jobs4");
  RunOptions opt;
  opt.master_seed = 21;
  opt.count = 5;
  opt.out_dir = one.path();
  opt.jobs = 1;
  generate_dataset(small_config(), opt);
  opt.out_dir = many.path();
  opt.jobs = 4;
  generate_dataset(small_config(), opt);
  EXPECT_EQ(manifest_without_timing(one.path() / "manifest.jsonl"),
            manifest_without_timing(many.path() / "manifest.jsonl"));
  for (std::uint64_t i = 0; i < 5; ++i) {
    for (const char* suffix : {"_image.nii", "_label.nii"}) {
      const std::string name = sample_stem(i) + suffix;
      EXPECT_EQ(file_digest(one.path() / name), file_digest(many.path() / name));
    }
  }
}

TEST(GenerateDataset, InvalidOptionsRejected) {
  testing::TempDir dir("badopts");
  RunOptions opt;
  opt.out_dir = dir.path();
  opt.count = 0;
  EXPECT_THROW(generate_dataset(small_config(), opt), ParameterError);
  opt.count = 1;
  opt.jobs = 0;
  EXPECT_THROW(generate_dataset(small_config(), opt), ParameterError);
}

}  // namespace
}  // namespace synthvol
