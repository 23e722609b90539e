// Copyright 2026 The hpxcap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random streams. Every draw is a pure function of
// (seed, stream, counter), so results never depend on thread scheduling.

#ifndef HPXCAP_RNG_HPP_
#define HPXCAP_RNG_HPP_

#include <cstdint>

namespace hpxcap {

inline constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline constexpr double to_unit_interval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit constexpr Rng(uint64_t seed, uint64_t stream = 0)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr uint64_t next_u64() { return splitmix64(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }
  constexpr double uniform() { return to_unit_interval(next_u64()); }
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Independent child stream; the parent is not advanced.
  constexpr Rng substream(uint64_t index) const { return Rng(key_, index); }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace hpxcap

#endif  // HPXCAP_RNG_HPP_
