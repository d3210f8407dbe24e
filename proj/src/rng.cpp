#include "bifbm/rng.hpp"

#include <cmath>

namespace bifbm {

NormalStream::NormalStream(const SeedSpec& seed, std::uint64_t path_index) noexcept
    : key_{static_cast<std::uint32_t>(seed.master_seed),
           static_cast<std::uint32_t>(seed.master_seed >> 32)},
      counter_{0u, static_cast<std::uint32_t>(path_index),
               static_cast<std::uint32_t>(path_index >> 32), seed.stream} {}

void NormalStream::refill() noexcept {
    block_ = philox4x32_10(counter_, key_);
    ++counter_[0];
    used_ = 0;
}

double NormalStream::next_uniform() noexcept {
    if (used_ > 2) refill();
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(block_[used_]) << 32) | block_[used_ + 1];
    used_ += 2;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double NormalStream::next() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    while (true) {
        const double v1 = 2.0 * next_uniform() - 1.0;
        const double v2 = 2.0 * next_uniform() - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s > 0.0 && s < 1.0) {
            const double factor = std::sqrt(-2.0 * std::log(s) / s);
            spare_ = v2 * factor;
            has_spare_ = true;
            return v1 * factor;
        }
    }
}

}  // namespace bifbm
