#include "mixeff/random.hpp"

#include "mixeff/normal.hpp"

namespace mixeff {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = std::uint64_t{a} * std::uint64_t{b};
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

RandomStream::RandomStream(StreamKey key) noexcept
    : key_{static_cast<std::uint32_t>(key.master_seed), static_cast<std::uint32_t>(key.master_seed >> 32)},
      cell_(key.cell),
      replication_(key.replication) {}

std::uint64_t RandomStream::next_u64() noexcept {
    // Each Philox block yields two 64-bit values.
    const std::uint64_t block_index = position_ >> 1;
    if ((position_ & 1u) == 0) {
        block_ = philox4x32_10({static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
                                replication_, cell_},
                               key_);
    }
    const unsigned half = static_cast<unsigned>(position_ & 1u) * 2;
    ++position_;
    return (std::uint64_t{block_[half]} << 32) | block_[half + 1];
}

double RandomStream::uniform() noexcept {
    // 53 random bits, shifted to the centre of each dyadic cell so 0 and 1 are excluded.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::standard_normal() noexcept { return normal_quantile_fast(uniform()); }

}  // namespace mixeff
