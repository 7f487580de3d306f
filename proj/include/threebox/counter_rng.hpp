// Copyright 2026 The threebox Authors
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

// Counter-based random stream, version "threebox-ctr-v1".
//
// Every 64-bit word is a pure function of (seed, trial, step, counter):
//
//   h = mix(seed)
//   h = mix(h ^ trial)
//   h = mix(h ^ step)
//   h = mix(h ^ counter)
//
// where mix(x) is the SplitMix64 output function applied to
// x + 0x9E3779B97F4A7C15. Uniform indices below n use Lemire's multiply-shift
// reduction; the rare rejected words are replaced by the next counter value.
// Changing any of this changes every simulated table, so bump the version.

#pragma once

#include <cstdint>
#include <string_view>

namespace threebox {

class CounterRng {
public:
    static constexpr std::string_view kVersion = "threebox-ctr-v1";

    CounterRng(std::uint64_t seed, std::uint64_t trial) : key_(mix(mix(seed) ^ trial)) {}

    static constexpr std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t word(std::uint64_t step, std::uint64_t counter) const { return mix(mix(key_ ^ step) ^ counter); }

    __extension__ using Wide = unsigned __int128;

    /// Uniform integer in [0, n) for the given step; n must be positive.
    std::uint64_t uniform_index(std::uint64_t step, std::uint64_t n) const {
        std::uint64_t counter = 0;
        Wide m = static_cast<Wide>(word(step, counter)) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<Wide>(word(step, ++counter)) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t key_;
};

}  // namespace threebox
