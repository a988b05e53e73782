// Copyright 2026 The Marble Drop Lab Authors
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

#ifndef MARBLEDROP_RNG_H_
#define MARBLEDROP_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace marbledrop {

// SplitMix64 finalizer. Used to derive independent child seeds.
std::uint64_t Mix64(std::uint64_t x);

// Child seed for (base, tag...). Stable across platforms and releases.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t tag);
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag);
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag,
                         std::uint64_t index);

// FNV-1a over bytes.
std::uint64_t HashBytes(std::string_view bytes);

// Deterministic generator. The standard distributions are implementation
// defined, so sampling is done here on top of the raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::uint64_t UniformInt(std::uint64_t n);
  // Uniform in [lo, hi].
  int UniformInt(int lo, int hi);
  // Uniform in [0, 1) with 53 bits.
  double Uniform01();
  bool Bernoulli(double p) { return Uniform01() < p; }
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = UniformInt(static_cast<std::uint64_t>(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_RNG_H_
