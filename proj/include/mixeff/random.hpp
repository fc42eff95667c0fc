#pragma once

#include <array>
#include <cstdint>

namespace mixeff {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// Pure function of (counter, key); no state.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Identifies one independent random stream: the master seed selects the key, and the
// (cell, replication) pair occupies the high half of the Philox counter.
struct StreamKey {
    std::uint64_t master_seed = 0;
    std::uint32_t cell = 0;
    std::uint32_t replication = 0;
};

// Counter-based random stream. Every 64-bit value is a pure function of
// (StreamKey, position), so any replication can be regenerated in isolation.
class RandomStream {
public:
    explicit RandomStream(StreamKey key) noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform on the open interval (0, 1); consumes one 64-bit value.
    double uniform() noexcept;

    // Standard normal by inversion of one uniform (normal_quantile_fast); consumes one 64-bit value.
    double standard_normal() noexcept;

    // Number of 64-bit values consumed so far.
    std::uint64_t position() const noexcept { return position_; }

private:
    PhiloxKey key_{};
    std::uint32_t cell_ = 0;
    std::uint32_t replication_ = 0;
    std::uint64_t position_ = 0;
    PhiloxCounter block_{};
};

}  // namespace mixeff
