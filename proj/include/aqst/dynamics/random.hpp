// Copyright 2026 The AQST Authors
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

#include <cstdint>
#include <limits>

namespace aqst {

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for stream `index` under `root`.
inline constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return mix64(mix64(root) ^ mix64(index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

// Counter-based generator: draw i is mix64(key + i * golden). Identical to the
// SplitMix64 sequence, but any draw can be addressed directly.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type at(std::uint64_t i) const noexcept { return mix64(seed_ + i * 0x9E3779B97F4A7C15ull); }
  result_type operator()() noexcept { return at(counter_++); }

  // Uniform on the open interval (0, 1).
  double uniform() noexcept { return (double((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace aqst
