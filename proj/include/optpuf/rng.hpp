// Copyright 2026 The optpuf Authors
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

#ifndef OPTPUF_RNG_HPP
#define OPTPUF_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace optpuf {

// splitmix64 step: advances `state` and returns a mixed 64-bit value.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based seed schedule. Every randomized operation in this library
/// derives its engine seed as derive_seed(master, stream_label, counter), so a
/// single master seed reproduces a whole experiment and distinct streams never
/// share engine state.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                 std::uint64_t counter = 0) noexcept {
  // FNV-1a over the stream label keeps distinct labels on distinct streams.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream) {
    h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  }
  std::uint64_t state = master ^ (h * 0x9e3779b97f4a7c15ULL) ^
                        (counter * 0xd1342543de82ef95ULL);
  std::uint64_t out = splitmix64(state);
  out ^= splitmix64(state);
  return out;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace optpuf

#endif  // OPTPUF_RNG_HPP
