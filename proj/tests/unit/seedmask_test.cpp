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

#include "synthvol/seedmask.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "synthvol/error.hpp"

namespace synthvol {
namespace {

TEST(SeedMask, SingleClusterNoBackgroundIsAllOnes) {
  RngStream s = derive_stream(1, 0, "mask");
  const SeedMask m = generate_seed_mask({32, 48, 1, 8.0, 0.0}, s);
  EXPECT_EQ(m.height(), 32);
  EXPECT_EQ(m.width(), 48);
  for (Label v : m.labels().values()) EXPECT_EQ(v, 1);
}

TEST(SeedMask, DeterministicForEqualStreams) {
  RngStream a = derive_stream(5, 3, "mask");
  RngStream b = derive_stream(5, 3, "mask");
  const SeedMaskConfig cfg{64, 64, 6, 8.0, 0.2};
  EXPECT_EQ(generate_seed_mask(cfg, a), generate_seed_mask(cfg, b));
  EXPECT_EQ(a, b);
}

TEST(SeedMask, LabelRangeAndBackgroundShare) {
  RngStream s = derive_stream(6, 0, "mask");
  const SeedMask m = generate_seed_mask({128, 128, 10, 16.0, 0.2}, s);
  EXPECT_EQ(m.k_max(), 10);
  std::size_t background = 0;
  for (Label v : m.labels().values()) {
    ASSERT_LE(v, 10);
    background += v == 0;
  }
  const double share = static_cast<double>(background) / m.labels().size();
  EXPECT_NEAR(share, 0.2, 0.01);
}

struct MaskStats {
  double mean_components = 0.0;     // per present foreground label
  double share_at_most_three = 0.0; // of present foreground labels
  double adjacency = 0.0;           // mean share of present label pairs that touch
};

MaskStats mask_stats(double sigma, int masks) {
  double components = 0.0, adjacency = 0.0;
  int present = 0, at_most_three = 0;
  for (int i = 0; i < masks; ++i) {
    RngStream s = derive_stream(13, i, "mask");
    const SeedMask m = generate_seed_mask({256, 256, 13, sigma, 0.2}, s);
    const auto& g = m.labels();
    std::vector<Label> labels;
    for (int l = 1; l <= 13; ++l) {
      const int c = testing::count_components(g, static_cast<Label>(l));
      if (c == 0) continue;
      labels.push_back(static_cast<Label>(l));
      components += c;
      at_most_three += c <= 3;
      ++present;
    }
    std::set<std::pair<Label, Label>> touching;
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        if (x + 1 < g.width()) touching.insert(std::minmax(g(y, x), g(y, x + 1)));
        if (y + 1 < g.height()) touching.insert(std::minmax(g(y, x), g(y + 1, x)));
      }
    }
    int pairs = 0, touch = 0;
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = a + 1; b < labels.size(); ++b) {
        ++pairs;
        touch += touching.count({labels[a], labels[b]});
      }
    }
    adjacency += pairs ? static_cast<double>(touch) / pairs : 0.0;
  }
  return {components / present, static_cast<double>(at_most_three) / present,
          adjacency / masks};
}

TEST(SeedMask, CoherentAdjacentClustersAtDefaultScale) {
  const MaskStats stats = mask_stats(16.0, 50);
  EXPECT_LE(stats.mean_components, 3.0);
  EXPECT_GE(stats.share_at_most_three, 0.9);
  EXPECT_GE(stats.adjacency, 0.5);
}

TEST(SeedMask, CoherentClustersAtFineScale) {
  EXPECT_GE(mask_stats(8.0, 50).share_at_most_three, 0.9);
}

TEST(AbsorbFragments, KeepsLargestPiecesAndMatchesComponentCount) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    Grid2D<Label> g(24, 24);
    for (auto& v : g.values()) v = static_cast<Label>(gen() % 5);
    const int keep = 1 + trial % 3;
    absorb_fragments(g, keep);
    for (int l = 1; l <= 4; ++l) {
      EXPECT_LE(testing::count_components(g, static_cast<Label>(l)), keep);
    }
  }
}

TEST(AbsorbFragments, SmallPieceJoinsSurroundingLabel) {
  Grid2D<Label> g(10, 10, 2);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) g(y, x) = 1;
  }
  g(7, 7) = 1;  // isolated speck inside label 2
  g(9, 0) = 0;
  absorb_fragments(g, 1);
  EXPECT_EQ(g(7, 7), 2);
  EXPECT_EQ(g(0, 0), 1);
  EXPECT_EQ(g(9, 0), 0);
  Grid2D<Label> untouched = g;
  absorb_fragments(untouched, 0);
  EXPECT_EQ(untouched, g);
}

TEST(SeedMask, InvalidConfigRejected) {
  RngStream s(0, 0);
  EXPECT_THROW(generate_seed_mask({4, 64, 3, 16.0, 0.2}, s), ParameterError);
  EXPECT_THROW(generate_seed_mask({64, 64, 0, 16.0, 0.2}, s), ParameterError);
  EXPECT_THROW(generate_seed_mask({64, 64, 3, 0.0, 0.2}, s), ParameterError);
  EXPECT_THROW(generate_seed_mask({64, 64, 3, 16.0, 1.0}, s), ParameterError);
  EXPECT_THROW(generate_seed_mask({64, 64, 3, 16.0, 0.2, -1}, s), ParameterError);
}

TEST(SeedMaskType, RejectsOutOfRangeLabelsAndSmallGrids) {
  Grid2D<Label> g(8, 8);
  g(0, 0) = 4;
  EXPECT_THROW(SeedMask(g, 3), ParameterError);
  EXPECT_THROW(SeedMask(Grid2D<Label>(7, 8), 3), ParameterError);
  EXPECT_NO_THROW(SeedMask(g, 4));
  const BinaryMask ind = SeedMask(g, 4).indicator(4);
  EXPECT_EQ(ind(0, 0), 1);
  EXPECT_EQ(ind(1, 1), 0);
}

}  // namespace
}  // namespace synthvol
