// Copyright 2026 The friendlab Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace friendlab {

/// Philox4x32-10 block function (Salmon et al., SC'11; Random123 constants).
class Philox4x32 {
   public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

   private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// Address of one random draw: (global seed, trial index, draw index).
struct RngKey {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint32_t draw = 0;
};

/// Stateless counter-based uniform source. The same key always yields the
/// same value, so trials can run in any order or in parallel.
struct CounterRng {
    static constexpr std::string_view kName = "philox4x32-10/v1";

    static constexpr std::uint64_t bits(const RngKey& k) {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(k.trial),
                                      static_cast<std::uint32_t>(k.trial >> 32), k.draw, 0u};
        const Philox4x32::Key key{static_cast<std::uint32_t>(k.seed),
                                  static_cast<std::uint32_t>(k.seed >> 32)};
        const auto out = Philox4x32::block(ctr, key);
        return (std::uint64_t{out[0]} << 32) | out[1];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    static constexpr double uniform(const RngKey& k) {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }
};

}  // namespace friendlab
