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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "synthvol/appearance.hpp"
#include "synthvol/blur.hpp"
#include "synthvol/morphology.hpp"
#include "synthvol/sampler.hpp"
#include "synthvol/seedmask.hpp"
#include "synthvol/volio.hpp"

namespace {

using namespace synthvol;

BinaryMask blob_mask(int n) {
  BinaryMask m(n, n);
  std::mt19937 gen(1);
  std::bernoulli_distribution bit(0.5);
  for (int y = n / 4; y < 3 * n / 4; ++y) {
    for (int x = n / 4; x < 3 * n / 4; ++x) m(y, x) = bit(gen) ? 1 : 0;
  }
  return m;
}

void BM_Dilate(benchmark::State& state) {
  const BinaryMask m = blob_mask(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dilate(m, 2));
  state.SetItemsProcessed(state.iterations() * m.size());
}
BENCHMARK(BM_Dilate)->Arg(64)->Arg(128)->Arg(256);

void BM_Erode(benchmark::State& state) {
  const BinaryMask m = blob_mask(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(erode(m, 2));
  state.SetItemsProcessed(state.iterations() * m.size());
}
BENCHMARK(BM_Erode)->Arg(64)->Arg(128)->Arg(256);

void BM_GaussianBlur(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RealGrid g(n, n);
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& v : g.values()) v = u(gen);
  const double sigma = static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_blur(g, sigma));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_GaussianBlur)->Args({128, 2})->Args({128, 8})->Args({256, 16});

void BM_Texture(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> weights{0.4, 0.3, 0.2, 0.1};
  RngStream stream(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_texture({n, n}, weights, 0.1, stream));
  }
}
BENCHMARK(BM_Texture)->Arg(128)->Arg(256);

void BM_SeedMask(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream stream = derive_stream(4, i++, "mask");
    benchmark::DoNotOptimize(generate_seed_mask({n, n, 12, 16.0, 0.2}, stream));
  }
}
BENCHMARK(BM_SeedMask)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  DistributionConfig dist;
  dist.hw_choices = {static_cast<int>(state.range(0))};
  dist.depth_range = {32, 32};
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_sample(dist, 5, i++));
}
BENCHMARK(BM_Sample)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EncodeNifti(benchmark::State& state) {
  const LabelVolume v(Dims{128, 128, 32}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(encode_nifti(v));
  state.SetBytesProcessed(state.iterations() * v.size() * 2);
}
BENCHMARK(BM_EncodeNifti);

}  // namespace

BENCHMARK_MAIN();
