#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "favwalk/rng.hpp"
#include "favwalk/walk.hpp"

using namespace favwalk;

namespace {

std::uint64_t fnv1a(const std::vector<std::int8_t>& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int8_t b : bytes) {
        h ^= static_cast<std::uint8_t>(b);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

// Reference words generated with NumPy's Philox bit generator
// (Philox(counter=0, key=...).random_raw(8)); both implement Philox4x64-10,
// so the raw outputs must agree exactly.
TEST_CASE("philox matches independent reference vectors") {
    const std::uint64_t want_key00[8] = {
        0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
        0x907d7a052fd5b4dcULL, 0x809bf322883987c3ULL, 0x471128b9e807f7ddULL,
        0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL};
    Philox4x64 gen00(0, 0);
    for (std::uint64_t want : want_key00) {
        CHECK(gen00() == want);
    }

    const std::uint64_t want_key123_7[8] = {
        0x1a9e860091be87b3ULL, 0xfce44826d0b0e471ULL, 0xfe35216afaa5ee73ULL,
        0x94253a85000b3d26ULL, 0x096b7be0a0933216ULL, 0xa6cf4c6409ef3f42ULL,
        0x24c6964dc2d4c4efULL, 0x923bc57e75cd80aaULL};
    Philox4x64 gen123(123, 7);
    for (std::uint64_t want : want_key123_7) {
        CHECK(gen123() == want);
    }

    const std::uint64_t want_key42_1[8] = {
        0x719965f2debb5c86ULL, 0xd0ff12852bfefaa0ULL, 0x824f8a46917b59d3ULL,
        0x633af9b3183bb36aULL, 0x0665962d67a5a63aULL, 0x58fb335daa5560b5ULL,
        0xf7121f0faa702e07ULL, 0xc5ae1d90ae3ad1a6ULL};
    Philox4x64 gen42(42, 1);
    for (std::uint64_t want : want_key42_1) {
        CHECK(gen42() == want);
    }
}

TEST_CASE("same seed gives identical step sequences") {
    StepStream a(Seed{987654321, 3});
    StepStream b(Seed{987654321, 3});
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_step() == b.next_step());
    }
}

TEST_CASE("distinct stream ids diverge within 64 steps") {
    StepStream a(Seed{5, 0});
    StepStream b(Seed{5, 1});
    bool differ = false;
    for (int i = 0; i < 64 && !differ; ++i) {
        differ = a.next_step() != b.next_step();
    }
    CHECK(differ);
}

TEST_CASE("seed (0,0) reference step sequence") {
    // Checksum frozen from the NumPy-derived word sequence: step byte is
    // +1 when the top bit is set, -1 otherwise; FNV-1a over the int8 bytes.
    StepStream s(Seed{0, 0});
    const int want_first[16] = {-1, -1, -1, 1, 1, -1, 1, 1,
                                -1, -1, 1,  -1, 1, -1, 1, 1};
    std::vector<std::int8_t> steps;
    for (int i = 0; i < 1000; ++i) {
        steps.push_back(static_cast<std::int8_t>(s.next_step()));
    }
    for (int i = 0; i < 16; ++i) {
        CHECK(steps[static_cast<std::size_t>(i)] == want_first[i]);
    }
    CHECK(fnv1a(steps) == 0xad724da9723c1ee9ULL);
}

TEST_CASE("steps are in {-1, +1} and balanced") {
    StepStream s(Seed{42, 0});
    const int n = 1'000'000;
    std::int64_t plus = 0;
    for (int i = 0; i < n; ++i) {
        const int step = s.next_step();
        REQUIRE((step == 1 || step == -1));
        plus += step == 1;
    }
    // 3 sigma binomial band around 1/2.
    const double frac = static_cast<double>(plus) / n;
    CHECK(frac > 0.5 - 0.0016);
    CHECK(frac < 0.5 + 0.0016);
}

TEST_CASE("lag-1 autocorrelation is negligible") {
    StepStream s(Seed{42, 1});
    const int n = 1'000'000;
    std::vector<double> x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) {
        x.push_back(s.next_step());
    }
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    double num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
        den += (x[i] - mean) * (x[i] - mean);
        if (i + 1 < n) {
            num += (x[i] - mean) * (x[i + 1] - mean);
        }
    }
    CHECK(std::abs(num / den) < 0.004);  // 4 / sqrt(n)
}

TEST_CASE("advance updates time and position") {
    WalkState w;
    w = advance(w, +1);
    CHECK(w.n == 1);
    CHECK(w.position == 1);

    WalkState v{5, -3};
    v = advance(v, -1);
    CHECK(v.n == 6);
    CHECK(v.position == -4);

    CHECK_THROWS_AS(advance(w, 2), std::invalid_argument);
    CHECK_THROWS_AS(advance(w, 0), std::invalid_argument);
}

TEST_CASE("alternating steps cancel") {
    WalkState w;
    for (int k = 0; k < 17; ++k) {
        w = advance(w, +1);
        w = advance(w, -1);
    }
    CHECK(w.n == 34);
    CHECK(w.position == 0);
}

TEST_CASE("parity and range invariants along a random trajectory") {
    StepStream s(Seed{7, 2});
    WalkState w;
    std::int64_t max_abs = 0;
    for (int i = 0; i < 10'000; ++i) {
        w = advance(w, s.next_step());
        max_abs = std::max<std::int64_t>(max_abs, std::abs(w.position));
        REQUIRE(((w.position % 2 + 2) % 2) ==
                (static_cast<std::int64_t>(w.n) % 2));
        REQUIRE(std::abs(w.position) <= static_cast<std::int64_t>(w.n));
    }
    CHECK(max_abs <= 10'000);
}

TEST_CASE("trajectory is reproducible across constructions") {
    std::vector<std::int64_t> first;
    for (int round = 0; round < 2; ++round) {
        StepStream s(Seed{2026, 11});
        WalkState w;
        std::vector<std::int64_t> traj;
        for (int i = 0; i < 4096; ++i) {
            w = advance(w, s.next_step());
            traj.push_back(w.position);
        }
        if (round == 0) {
            first = traj;
        } else {
            CHECK(first == traj);
        }
    }
}
