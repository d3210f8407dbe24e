#pragma once

// Counter-based random numbers for reproducible Monte Carlo.
//
// Every path draws from its own Philox4x32-10 stream:
//   key     = (low 32 bits of master_seed, high 32 bits of master_seed)
//   counter = (block index, low 32 bits of path index, high 32 bits of path index, stream tag)
// Distinct (master_seed, stream tag, path index) triples therefore never share a
// counter/key pair, and path p is identical regardless of which thread produces it
// or in what order. Standard normals come from the Marsaglia polar method applied
// to pairs of 53-bit uniforms; rejected pairs simply consume the next block.

#include <array>
#include <cstdint>

namespace bifbm {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
[[nodiscard]] constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// Identifies a family of substreams. Components of one sampler that must be
/// independent use different `stream` tags under the same master seed.
struct SeedSpec {
    std::uint64_t master_seed = 20240613;
    std::uint32_t stream = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240613;

/// Standard normal variates for one (seed, stream, path) triple.
class NormalStream {
public:
    NormalStream(const SeedSpec& seed, std::uint64_t path_index) noexcept;

    [[nodiscard]] double next() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    [[nodiscard]] double next_uniform() noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bifbm
