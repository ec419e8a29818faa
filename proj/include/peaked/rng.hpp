// Copyright 2026 The peaked-itcf developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace peaked {

/// SplitMix64 finalizer. Used both to expand seeds into generator state and
/// to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t z);

/// Deterministic substream seed for (domain, index) under a root seed.
/// Every place the library consumes more than one random stream (Haar
/// samples, noise trajectories, sweep points, shot batches) derives its
/// seed through this function, so results are reproducible bit-for-bit
/// regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain,
                          std::uint64_t index);

/// Substream domains. Fixed constants; changing them changes every seeded
/// result, so treat as part of the on-disk format.
enum : std::uint64_t {
  kSeedDomainHaarSample = 1,
  kSeedDomainTrajectory = 2,
  kSeedDomainSweepPoint = 3,
  kSeedDomainShots = 4,
};

/// xoshiro256++ generator seeded via SplitMix64. Self-contained so that
/// streams are identical across platforms and standard-library versions;
/// std::mt19937 would match but the std distributions would not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 usable bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be nonzero. Uses modular
  /// reduction; the bias is < bound / 2^64 which is irrelevant here.
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace peaked
