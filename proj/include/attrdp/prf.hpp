// Copyright 2026 The attrdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace attrdp {

// SplitMix64 finalizer. A bijection on 64-bit words with full avalanche.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Keyed pseudo-random function over (seed, record index, attribute index).
//
//   h = Mix64(Mix64(Mix64(seed) ^ record) ^ attribute)
//   draw = (h >> 11) * 2^-53
//
// The draw is uniform on [0, 1) with 53 bits of resolution. This function is
// part of the output format: changing it changes every perturbed release for
// a given seed, so treat it as frozen.
constexpr double UniformDraw(std::uint64_t seed, std::uint64_t record,
                             std::uint64_t attribute) {
  std::uint64_t h = Mix64(seed);
  h = Mix64(h ^ record);
  h = Mix64(h ^ attribute);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace attrdp
