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

#include "synthvol/config.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "oracles.hpp"
#include "synthvol/error.hpp"

namespace synthvol {
namespace {

std::string error_of(const std::string& ini) {
  try {
    parse_config_ini(ini, "test.ini");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, EmptyTextGivesDefaults) {
  EXPECT_EQ(parse_config_ini("", "empty"), DistributionConfig{});
}

TEST(Config, ParsesEverySection) {
  const DistributionConfig c = parse_config_ini(R"(
[volume]
hw_choices = 64, 96
depth_range = 8, 12
k_range = 3, 5

[seedmask]
coherence_sigma = 4
background_fraction = 0.1

[struct]
g_range = 1, 1
s_range = 0, 3
d_star_range = 0.5, 0.5
pi_prob = 0.25

[appearance]
n_scales_range = 2, 3
weight_range = 0.5, 2
intensity_range = 0.2, 0.4
sigma_range = 3, 4
bg_mean = 0.4
bg_sd = 0.05
bg_perturb_sd = 0.01
noise_sd = 0.2
background_mode = per-pixel
)", "full");
  EXPECT_EQ(c.hw_choices, (std::vector<int>{64, 96}));
  EXPECT_EQ(c.depth_range, (IntRange{8, 12}));
  EXPECT_EQ(c.k_range, (IntRange{3, 5}));
  EXPECT_EQ(c.coherence_sigma, 4.0);
  EXPECT_EQ(c.background_fraction, 0.1);
  EXPECT_EQ(c.g_range, (IntRange{1, 1}));
  EXPECT_EQ(c.s_range, (IntRange{0, 3}));
  EXPECT_EQ(c.d_star_range, (RealRange{0.5, 0.5}));
  EXPECT_EQ(c.pi_prob, 0.25);
  EXPECT_EQ(c.n_scales_range, (IntRange{2, 3}));
  EXPECT_EQ(c.weight_range, (RealRange{0.5, 2.0}));
  EXPECT_EQ(c.intensity_range, (RealRange{0.2, 0.4}));
  EXPECT_EQ(c.sigma_range, (RealRange{3.0, 4.0}));
  EXPECT_EQ(c.bg_mean, 0.4);
  EXPECT_EQ(c.bg_sd, 0.05);
  EXPECT_EQ(c.bg_perturb_sd, 0.01);
  EXPECT_EQ(c.noise_sd, 0.2);
  EXPECT_EQ(c.background_mode, BackgroundMode::kPerPixel);
}

TEST(Config, IniRoundTrip) {
  DistributionConfig c;
  c.hw_choices = {32, 48, 64};
  c.d_star_range = {0.25, 0.75};
  c.noise_sd = 0.123456789;
  c.background_mode = BackgroundMode::kPerPixel;
  EXPECT_EQ(parse_config_ini(to_ini(c), "roundtrip"), c);
}

TEST(Config, JsonRoundTrip) {
  DistributionConfig c;
  c.k_range = {2, 4};
  c.bg_mean = 0.6;
  const nlohmann::json j = c;
  EXPECT_EQ(j.get<DistributionConfig>(), c);
}

TEST(Config, UnknownKeyAndSectionNamed) {
  EXPECT_NE(error_of("[volume]\nhw = 3\n").find("unknown config key 'volume.hw'"),
            std::string::npos);
  EXPECT_NE(error_of("[colour]\nx = 1\n").find("colour"), std::string::npos);
}

TEST(Config, InvalidValuesNameTheKey) {
  EXPECT_NE(error_of("[volume]\nk_range = 5, 3\n").find("volume.k_range"), std::string::npos);
  EXPECT_NE(error_of("[struct]\npi_prob = 1.5\n").find("struct.pi_prob"), std::string::npos);
  EXPECT_NE(error_of("[appearance]\nnoise_sd = abc\n").find("appearance.noise_sd"),
            std::string::npos);
  EXPECT_NE(error_of("[appearance]\nsigma_range = 2\n").find("appearance.sigma_range"),
            std::string::npos);
  EXPECT_NE(error_of("[appearance]\nbackground_mode = wavy\n").find("background_mode"),
            std::string::npos);
  EXPECT_NE(error_of("[volume]\nhw_choices = 4\n").find("volume.hw_choices"),
            std::string::npos);
}

TEST(Config, LoadFromFiles) {
  testing::TempDir dir("config");
  const auto ini = dir.path() / "c.ini";
  std::ofstream(ini) << "[volume]\nhw_choices = 64\n";
  EXPECT_EQ(load_config(ini).hw_choices, std::vector<int>{64});

  DistributionConfig c;
  c.depth_range = {20, 30};
  const auto run = dir.path() / "run.json";
  std::ofstream(run) << nlohmann::json{{"tool", "synthvol"}, {"config", c}}.dump();
  EXPECT_EQ(load_config(run), c);

  try {
    load_config(dir.path() / "missing.ini");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.ini"), std::string::npos);
  }
}

TEST(ParamsJson, StructAndAppearanceRoundTrip) {
  const StructParams sp{7, {{1, 2, 3, true}, {0, 0, 1, false}}};
  EXPECT_EQ(nlohmann::json(sp).get<StructParams>(), sp);
  AppearanceParams ap;
  ap.per_label = {{2, {0.1, 0.9}, 0.3, 2.5}};
  ap.background_mode = BackgroundMode::kPerPixel;
  EXPECT_EQ(nlohmann::json(ap).get<AppearanceParams>(), ap);
}

}  // namespace
}  // namespace synthvol
