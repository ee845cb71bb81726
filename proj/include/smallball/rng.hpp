// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstdint>

namespace smallball {

/// Philox4x32-10 counter-based generator: a keyed bijection of 128-bit counters.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kBump0;
                key[1] += kBump1;
            }
            counter = single_round(counter, key);
        }
        return counter;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kBump0 = 0x9E3779B9u;
    static constexpr std::uint32_t kBump1 = 0xBB67AE85u;

    static Counter single_round(const Counter& c, const Key& k) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Stream of uniform pairs for one (seed, path, process tag) triple: block
/// `step` is Philox({step, tag, path_lo, path_hi}, seed), so any draw can be
/// reproduced without replaying the stream.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t path, std::uint32_t tag)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          tag_(tag),
          path_lo_(static_cast<std::uint32_t>(path)),
          path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

    /// Two uniforms in (0, 1) from the next block, each with 53 random bits.
    std::array<double, 2> uniform_pair() {
        const auto out = Philox4x32::generate({step_, tag_, path_lo_, path_hi_}, key_);
        ++step_;
        const std::uint64_t a = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        const std::uint64_t b = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        return {to_unit(a), to_unit(b)};
    }

    std::uint32_t position() const { return step_; }

private:
    static double to_unit(std::uint64_t bits) {
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    Philox4x32::Key key_;
    std::uint32_t tag_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
    std::uint32_t step_ = 0;
};

}  // namespace smallball
