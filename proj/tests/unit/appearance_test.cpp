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

#include "synthvol/appearance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "synthvol/error.hpp"

namespace synthvol {
namespace {

double mean_of(const RealGrid& g) {
  double s = 0.0;
  for (double v : g.values()) s += v;
  return s / static_cast<double>(g.size());
}

/// Largest |v - target| over every value of a grid or volume.
template <typename G>
double max_deviation(const G& g, double target) {
  double m = 0.0;
  for (auto v : g.values()) m = std::max(m, std::abs(static_cast<double>(v) - target));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Texture, SingleScaleMeanNearZero) {
  RngStream s = derive_stream(1, 0, "app");
  const std::vector<double> w{1.0};
  const TextureField t = generate_texture({256, 256}, w, 0.1, s);
  // Each 2x2 block shares one noise value, so 128^2 independent draws.
  EXPECT_LT(std::abs(mean_of(t)), 4 * 0.1 / 128);
}

TEST(Texture, WeightScaleInvariant) {
  RngStream a = derive_stream(2, 0, "app");
  RngStream b = derive_stream(2, 0, "app");
  const std::vector<double> w1{1.0, 1.0}, w2{2.0, 2.0};
  EXPECT_EQ(generate_texture({40, 40}, w1, 0.1, a), generate_texture({40, 40}, w2, 0.1, b));
  RngStream c = derive_stream(2, 1, "app");
  RngStream d = derive_stream(2, 1, "app");
  const std::vector<double> w3{0.3, 0.7, 0.1}, w4{3.0, 7.0, 1.0};
  EXPECT_EQ(generate_texture({33, 21}, w3, 0.1, c), generate_texture({33, 21}, w4, 0.1, d));
}

TEST(Texture, ZeroNoiseIsZeroField) {
  RngStream s(3, 3);
  const std::vector<double> w{0.2, 0.5, 0.9, 0.1};
  EXPECT_EQ(max_deviation(generate_texture({16, 16}, w, 0.0, s), 0.0), 0.0);
}

TEST(Texture, InvalidWeightsRejected) {
  RngStream s(0, 0);
  EXPECT_THROW(generate_texture({8, 8}, std::vector<double>{}, 0.1, s), ParameterError);
  EXPECT_THROW(generate_texture({8, 8}, std::vector<double>{1.0, 0.0}, 0.1, s),
               ParameterError);
  EXPECT_THROW(generate_texture({8, 8}, std::vector<double>{1.0}, -0.1, s), ParameterError);
}

TEST(Texture, GrandMeanOverManyFields) {
  double grand = 0.0;
  for (int i = 0; i < 20; ++i) {
    RngStream s = derive_stream(4, i, "app");
    const std::vector<double> w{0.5, 0.5};
    grand += mean_of(generate_texture({256, 256}, w, 0.1, s));
  }
  EXPECT_LT(std::abs(grand / 20), 0.1 / 10);
}

TEST(Background, DegenerateDistributions) {
  RngStream s(5, 5);
  EXPECT_EQ(max_deviation(background_slice({8, 8}, 0.5, 0.0, 0.0, s), 0.5), 0.0);
  EXPECT_EQ(max_deviation(background_slice({8, 8}, 2.0, 0.0, 0.0, s), 1.0), 0.0);
  EXPECT_EQ(max_deviation(background_slice({8, 8}, -1.0, 0.0, 0.0, s), 0.0), 0.0);
}

TEST(Background, SliceStatistics) {
  RngStream s = derive_stream(6, 0, "app");
  double sum_means = 0.0;
  double sum_sd = 0.0;
  const int slices = 1000;
  for (int i = 0; i < slices; ++i) {
    const RealGrid g = background_slice({32, 32}, 0.5, 0.1, 0.02, s);
    const double m = mean_of(g);
    double var = 0.0;
    for (double v : g.values()) var += (v - m) * (v - m);
    sum_means += m;
    sum_sd += std::sqrt(var / (g.size() - 1));
  }
  EXPECT_NEAR(sum_means / slices, 0.5, 0.02);
  EXPECT_NEAR(sum_sd / slices, 0.02, 0.02 * 0.3);
}

TEST(Background, PerPixelModeVariesWithinSlice) {
  RngStream s(7, 7);
  const RealGrid g = background_slice({16, 16}, 0.5, 0.1, 0.0, s, BackgroundMode::kPerPixel);
  double lo = 1.0, hi = 0.0;
  for (double v : g.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GT(hi - lo, 0.1);
}

TEST(SoftenMask, EmptyFullAndEdge) {
  EXPECT_EQ(max_deviation(soften_mask(BinaryMask(16, 16), 2.0), 0.0), 0.0);
  EXPECT_LT(max_deviation(soften_mask(BinaryMask(16, 16, 1), 3.0), 1.0), 1e-6);

  BinaryMask square(64, 64);
  for (int y = 22; y < 42; ++y) {
    for (int x = 22; x < 42; ++x) square(y, x) = 1;
  }
  const RealGrid soft = soften_mask(square, 2.0);
  RealGrid ind(64, 64);
  for (int i = 0; i < 64 * 64; ++i) ind.values()[i] = square.values()[i];
  const RealGrid dense = testing::dense_gaussian(ind, 2.0);
  EXPECT_LT(max_abs_diff(soft.values(), dense.values()), 1e-9);
  EXPECT_NEAR(0.5 * (soft(32, 21) + soft(32, 22)), 0.5, 0.02);
  for (double v : soft.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(ComposeSlice, NoLabelsReturnsBackground) {
  const RealGrid bg(8, 8, 0.37);
  EXPECT_EQ(compose_slice(bg, {}, {}, {}, {}), bg);
}

TEST(ComposeSlice, ZeroTextureLeavesBackground) {
  const RealGrid bg(8, 8, 0.25);
  const std::vector<BinaryMask> masks{BinaryMask(8, 8, 1)};
  const std::vector<TextureField> tex{RealGrid(8, 8, 0.0)};
  const std::vector<double> inten{0.7}, sig{2.0};
  EXPECT_EQ(compose_slice(bg, masks, tex, inten, sig), bg);
}

TEST(ComposeSlice, MatchesElementwiseOracle) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  RealGrid bg(8, 8);
  for (auto& v : bg.values()) v = 0.5 + u(gen);
  std::vector<BinaryMask> masks{testing::random_mask(gen, 8, 8, 0.3),
                                testing::random_mask(gen, 8, 8, 0.3)};
  std::vector<TextureField> tex(2, RealGrid(8, 8));
  for (auto& t : tex) {
    for (auto& v : t.values()) v = u(gen);
  }
  const std::vector<double> inten{0.3, 0.8}, sig{2.0, 3.5};
  const RealGrid out = compose_slice(bg, masks, tex, inten, sig);

  RealGrid expected = bg;
  for (int l = 0; l < 2; ++l) {
    RealGrid ind(8, 8);
    for (int i = 0; i < 64; ++i) ind.values()[i] = masks[l].values()[i];
    const RealGrid soft = testing::dense_gaussian(ind, sig[l]);
    for (int i = 0; i < 64; ++i) {
      expected.values()[i] +=
          inten[l] * tex[l].values()[i] * std::clamp(soft.values()[i], 0.0, 1.0);
    }
  }
  EXPECT_LT(max_abs_diff(out.values(), expected.values()), 1e-12);
}

TEST(ComposeSlice, MismatchedInputsRejected) {
  const RealGrid bg(8, 8);
  const std::vector<BinaryMask> masks{BinaryMask(8, 8)};
  const std::vector<TextureField> tex{RealGrid(8, 9)};
  const std::vector<double> one{0.5};
  EXPECT_THROW(compose_slice(bg, masks, tex, one, one), ParameterError);
  EXPECT_THROW(compose_slice(bg, masks, {}, one, one), ParameterError);
}

TEST(Normalize, ConstantVolumeIsZero) {
  FloatVolume v(Dims{3, 3, 2}, 7.3);
  EXPECT_EQ(max_deviation(normalize_volume(v), 0), 0.0);
}

TEST(Normalize, WorkedExample) {
  FloatVolume v(Dims{1, 3, 1});
  v(0, 0, 0) = 10;
  v(0, 1, 0) = 15;
  v(0, 2, 0) = 20;
  const ImageVolume out = normalize_volume(v);
  EXPECT_EQ(out(0, 0, 0), 0);
  EXPECT_EQ(out(0, 1, 0), 128);
  EXPECT_EQ(out(0, 2, 0), 255);
}

TEST(Normalize, EndpointsPresentAndNonFiniteRejected) {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> n(0.0, 3.0);
  FloatVolume v(Dims{5, 6, 4});
  for (auto& x : v.values()) x = n(gen);
  const ImageVolume out = normalize_volume(v);
  EXPECT_EQ(*std::min_element(out.values().begin(), out.values().end()), 0);
  EXPECT_EQ(*std::max_element(out.values().begin(), out.values().end()), 255);
  v(0, 0, 0) = std::nan("");
  EXPECT_THROW(normalize_volume(v), DataError);
}

AppearanceParams two_label_params() {
  AppearanceParams p;
  p.per_label = {{2, {0.3, 0.6}, 0.4, 2.0}, {3, {0.2, 0.5, 0.9}, 0.8, 3.0}};
  return p;
}

LabelVolume small_labels() {
  LabelVolume y(Dims{12, 10, 3});
  for (int d = 0; d < 3; ++d) {
    for (int r = 2; r < 7; ++r) {
      for (int c = 1 + d; c < 6; ++c) y(r, c, d) = 1;
    }
    for (int r = 6; r < 11; ++r) {
      for (int c = 5; c < 9; ++c) y(r, c, d) = d == 2 ? 0 : 2;
    }
  }
  return y;
}

TEST(Gamma, AllBackgroundDegenerateIsZero) {
  AppearanceParams p;
  p.per_label = {{1, {1.0}, 0.5, 2.0}};
  p.bg_sd = 0.0;
  p.bg_perturb_sd = 0.0;
  RngStream s(1, 1);
  EXPECT_EQ(max_deviation(gamma(LabelVolume(Dims{8, 8, 2}), p, s), 0), 0.0);
}

TEST(Gamma, DeterministicForEqualStreams) {
  const AppearanceParams p = two_label_params();
  RngStream a = derive_stream(9, 0, "app");
  RngStream b = derive_stream(9, 0, "app");
  EXPECT_EQ(gamma(small_labels(), p, a), gamma(small_labels(), p, b));
}

TEST(Gamma, MatchesScriptedRender) {
  const AppearanceParams p = two_label_params();
  const LabelVolume y = small_labels();
  RngStream a = derive_stream(10, 0, "app");
  RngStream b = derive_stream(10, 0, "app");
  const FloatVolume rendered = render_volume(y, p, a);
  const FloatVolume scripted = testing::scripted_render(y, p, b);
  EXPECT_LT(max_abs_diff(rendered.values(), scripted.values()), 1e-9);
  EXPECT_EQ(a, b);
  EXPECT_EQ(normalize_volume(rendered), normalize_volume(scripted));
}

TEST(Gamma, LabelWithoutParametersRejected) {
  AppearanceParams p;
  p.per_label = {{1, {1.0}, 0.5, 2.0}};
  LabelVolume y(Dims{8, 8, 1});
  y(0, 0, 0) = 2;
  RngStream s(0, 0);
  EXPECT_THROW(gamma(y, p, s), ParameterError);
}

}  // namespace
}  // namespace synthvol
