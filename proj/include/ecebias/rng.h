// Copyright 2026 The ecebias Authors.
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

#ifndef ECEBIAS_RNG_H_
#define ECEBIAS_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ecebias {

// SplitMix64 finalizer. Used to derive independent child seeds (per trial,
// per stratum) from a user seed so parallel work stays order-stable.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

// Seeded generator with platform-stable draws. std::mt19937_64 has a fully
// specified output sequence, but the standard distributions do not, so the
// bounded and real-valued draws are implemented here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  uint64_t Below(uint64_t bound);

  // Uniform integer in [lo, hi].
  int64_t Between(int64_t lo, int64_t hi);

  // Uniform double in [0, 1) with 53 bits of precision.
  double Uniform();

  // Index drawn proportionally to non-negative weights. At least one weight
  // must be positive.
  size_t Weighted(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ecebias

#endif  // ECEBIAS_RNG_H_
