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

#include "ditomo/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ditomo {

namespace {

constexpr double kChunkMean = 10.0;

uint64_t knuth_poisson(Prng &rng, double mean) {
    double limit = std::exp(-mean);
    double product = 1.0;
    uint64_t k = 0;
    while (true) {
        product *= rng.uniform();
        if (product <= limit) {
            return k;
        }
        k++;
    }
}

}  // namespace

uint64_t poisson_sample(Prng &rng, double mean) {
    if (!(mean >= 0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_sample: mean must be finite and >= 0");
    }
    if (mean == 0) {
        return 0;
    }
    if (mean < kChunkMean) {
        return knuth_poisson(rng, mean);
    }
    auto chunks = static_cast<uint64_t>(std::ceil(mean / kChunkMean));
    double chunk_mean = mean / static_cast<double>(chunks);
    uint64_t total = 0;
    for (uint64_t c = 0; c < chunks; c++) {
        total += knuth_poisson(rng, chunk_mean);
    }
    return total;
}

}  // namespace ditomo
