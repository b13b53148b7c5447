#ifndef FAVWALK_RNG_HPP
#define FAVWALK_RNG_HPP

#include <array>
#include <cstdint>

namespace favwalk {

// Identifies one replica's step stream. The pair (base_seed, stream_id) is
// the full key of a counter-based generator, so distinct stream_ids index
// disjoint generators with no shared state and no overlap by construction.
struct Seed {
    std::uint64_t base_seed = 0;
    std::uint32_t stream_id = 0;
};

/**
 * Philox4x64-10 counter-based generator (Salmon et al., "Parallel random
 * numbers: as easy as 1, 2, 3"). Output matches NumPy's Philox bit
 * generator for the same (counter, key); see the frozen vectors in
 * tests/test_rng.cpp.
 *
 * State is a 256-bit block counter plus a 128-bit key. Each block yields
 * four 64-bit words; the counter then increments, so the period per key is
 * 2^256 blocks.
 */
class Philox4x64 {
public:
    Philox4x64(std::uint64_t key0, std::uint64_t key1) : key_{key0, key1} {}

    // Next raw 64-bit word.
    std::uint64_t operator()() {
        if (idx_ == kBuffered) {
            refill();
        }
        return buf_[idx_++];
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                        std::uint64_t& lo) {
        const unsigned __int128 p =
            static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static void round_once(std::array<std::uint64_t, 4>& c,
                           const std::array<std::uint64_t, 2>& k) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    void bump() {
        // 256-bit counter increment, low limb first; the counter is bumped
        // before a block is produced, matching NumPy's buffering order.
        if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) {
            ++ctr_[3];
        }
    }

    // Two counter blocks per refill; their rounds are interleaved so the
    // wide multiplies of independent blocks pipeline.
    void refill() {
        bump();
        std::array<std::uint64_t, 4> c0 = ctr_;
        bump();
        std::array<std::uint64_t, 4> c1 = ctr_;
        std::array<std::uint64_t, 2> k = key_;
        for (int r = 0; r < 9; ++r) {
            round_once(c0, k);
            round_once(c1, k);
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        round_once(c0, k);
        round_once(c1, k);
        for (int i = 0; i < 4; ++i) {
            buf_[static_cast<std::size_t>(i)] = c0[static_cast<std::size_t>(i)];
            buf_[static_cast<std::size_t>(i + 4)] = c1[static_cast<std::size_t>(i)];
        }
        idx_ = 0;
    }

    static constexpr int kBuffered = 8;

    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, kBuffered> buf_{};
    int idx_ = kBuffered;
};

// Deterministic stream of +/-1 steps. One step per generator word, taken
// from the top bit so no low-bit structure can leak into the walk.
class StepStream {
public:
    explicit StepStream(Seed seed)
        : gen_(seed.base_seed, static_cast<std::uint64_t>(seed.stream_id)) {}

    std::uint64_t next_word() { return gen_(); }

    int next_step() { return (next_word() >> 63) ? +1 : -1; }

private:
    Philox4x64 gen_;
};

}  // namespace favwalk

#endif
