#pragma once

#include <array>
#include <cstdint>

namespace gfl {

// Counter-based generator (Philox 4x32, 10 rounds). Each (seed, stream) pair
// names an independent sequence, so sample i of a simulation can be drawn
// from stream i no matter which worker handles it.
class PhiloxRng {
   public:
    PhiloxRng(std::uint64_t seed, std::uint64_t stream)
        : key0_(std::uint32_t(seed)), key1_(std::uint32_t(seed >> 32)),
          ctr0_(std::uint32_t(stream)), ctr1_(std::uint32_t(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        return lo | (std::uint64_t(next_u32()) << 32);
    }

    // uniform integer in [0, bound), exact via rejection; bound >= 1
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r < limit) return r % bound;
        }
    }

    // uniform double in [0, 1) with 53 random bits
    double uniform_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

   private:
    void refill() {
        std::uint32_t x0 = ctr0_, x1 = ctr1_, x2 = ctr2_, x3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t m0 = std::uint64_t(0xD2511F53u) * x0;
            std::uint64_t m1 = std::uint64_t(0xCD9E8D57u) * x2;
            std::uint32_t y0 = std::uint32_t(m1 >> 32) ^ x1 ^ k0;
            std::uint32_t y1 = std::uint32_t(m1);
            std::uint32_t y2 = std::uint32_t(m0 >> 32) ^ x3 ^ k1;
            std::uint32_t y3 = std::uint32_t(m0);
            x0 = y0, x1 = y1, x2 = y2, x3 = y3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        block_ = {x0, x1, x2, x3};
        pos_ = 0;
        if (++ctr2_ == 0) ++ctr3_;  // advance the intra-stream block counter
    }

    std::uint32_t key0_, key1_;
    std::uint32_t ctr0_, ctr1_;
    std::uint32_t ctr2_ = 0, ctr3_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
};

}  // namespace gfl
