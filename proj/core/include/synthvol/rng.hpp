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

#ifndef SYNTHVOL_RNG_HPP_
#define SYNTHVOL_RNG_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace synthvol {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128 bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The seed is the Philox key and the stream id
/// occupies the upper half of the counter, so distinct (seed, stream_id)
/// pairs never share a block and no coordination between streams is needed.
///
/// A stream is single-owner; copy it to fork an identical sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of resolution.
  double next_unit();
  /// Standard normal via the Marsaglia polar method. Pairs are cached, so
  /// the spare value is part of the stream state.
  double next_standard_normal();

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::optional<double> spare_normal_;
};

/// Stream for one (sample, purpose) pair of a run. Deterministic in its inputs.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t sample_index,
                        std::string_view substream_tag);

/// Uniform real on [lo, hi); returns lo exactly when lo == hi.
double draw_uniform(RngStream& stream, double lo, double hi);
/// Uniform integer on the closed interval [lo, hi], without modulo bias.
int draw_uniform_int(RngStream& stream, int lo, int hi);
double draw_normal(RngStream& stream, double mean, double sd);
bool draw_bernoulli(RngStream& stream, double p);

}  // namespace synthvol

#endif  // SYNTHVOL_RNG_HPP_
