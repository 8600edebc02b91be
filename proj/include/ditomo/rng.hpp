// Copyright 2026 The ditomo Authors
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

#ifndef DITOMO_RNG_HPP
#define DITOMO_RNG_HPP

#include <cstdint>
#include <string_view>

namespace ditomo {

/// SplitMix64 (Steele, Lea, Flood 2014). Increment 0x9E3779B97F4A7C15, finalizer
/// multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts 30/27/31.
/// Output depends only on the seed, never on the platform or standard library.
class Prng {
   public:
    static constexpr std::string_view algorithm = "splitmix64";

    explicit Prng(uint64_t seed) : state_(seed) {
    }

    static constexpr uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    uint64_t state() const {
        return state_;
    }

   private:
    uint64_t state_;
};

/// Seed of the index-th child stream of `base`, using the generator's own mixer.
constexpr uint64_t derive_seed(uint64_t base, uint64_t index) {
    return Prng::mix(Prng::mix(base) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Exact Poisson variate. Knuth's multiplication method on chunks of mean <= 10,
/// summed by additivity; no normal approximation. Throws std::invalid_argument
/// for a negative or non-finite mean.
uint64_t poisson_sample(Prng &rng, double mean);

}  // namespace ditomo

#endif
