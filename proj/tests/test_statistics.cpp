#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "favwalk/count_field.hpp"
#include "favwalk/favorites.hpp"
#include "favwalk/rng.hpp"
#include "favwalk/schedule.hpp"
#include "favwalk/statistics.hpp"

using namespace favwalk;

using U64s = std::vector<std::uint64_t>;

TEST_CASE("geometric schedule doubling from 16 to 128") {
    ScheduleSpec spec{ScheduleKind::geometric, 2.0, 16, 128};
    CHECK(schedule_points(spec) == U64s{16, 32, 64, 128});
}

TEST_CASE("exppow schedule starts at ceil(exp(2^1.5)) = 17") {
    ScheduleSpec spec{ScheduleKind::exppow, 1.5, 16, 1'000'000};
    const auto pts = schedule_points(spec);
    REQUIRE(!pts.empty());
    // k=1 gives ceil(e) = 3 < 16, excluded; k=2 gives exp(2.828...) = 16.92.
    CHECK(pts.front() == 17);
    CHECK(pts.front() ==
          static_cast<std::uint64_t>(std::ceil(std::exp(std::pow(2.0, 1.5)))));
}

TEST_CASE("superexp schedule in [16, 1e8] is {2^10, 3^15}") {
    ScheduleSpec spec{ScheduleKind::superexp, 0.0, 16, 100'000'000};
    CHECK(schedule_points(spec) == U64s{1024, 14'348'907});
}

TEST_CASE("schedules are strictly increasing and deduplicated") {
    const ScheduleSpec specs[] = {
        {ScheduleKind::geometric, 1.05, 16, 2'000},
        {ScheduleKind::geometric, 3.7, 16, 1'000'000'000},
        {ScheduleKind::exppow, 2.0, 16, 100'000'000},
        {ScheduleKind::superexp, 0.0, 16, 1'000'000'000'000ULL},
    };
    for (const auto& spec : specs) {
        const auto pts = schedule_points(spec);
        REQUIRE(!pts.empty());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            REQUIRE(pts[i] >= spec.n_min);
            REQUIRE(pts[i] <= spec.n_max);
            if (i > 0) {
                REQUIRE(pts[i] > pts[i - 1]);
            }
        }
    }
}

TEST_CASE("empty schedule when n_min exceeds n_max") {
    ScheduleSpec spec{ScheduleKind::geometric, 2.0, 16, 10};
    CHECK(schedule_points(spec).empty());
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(
        schedule_points({ScheduleKind::geometric, 1.0, 16, 100}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        schedule_points({ScheduleKind::exppow, 0.9, 16, 100}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        schedule_points({ScheduleKind::geometric, 2.0, 8, 100}),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule("bogus:2", 100), std::invalid_argument);
    CHECK(parse_schedule("geometric:1.5", 100).param == 1.5);
    CHECK(parse_schedule("superexp", 1 << 20).kind == ScheduleKind::superexp);
}

TEST_CASE("lil_ratio") {
    // Identity: a equal to the normalizer gives exactly 1.
    const std::uint64_t n = 4096;
    const double norm = std::sqrt(2.0 * n * std::log(std::log(n)));
    CHECK(lil_ratio(n, norm) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lil_ratio(n, 0.0) == 0.0);

    // Direct numeric evaluation: 1e3 / sqrt(2e6 log log 1e6).
    const double want = 1e3 / std::sqrt(2e6 * std::log(std::log(1e6)));
    CHECK(lil_ratio(1'000'000, 1e3) == want);
    CHECK(want == doctest::Approx(0.43636).epsilon(1e-4));

    CHECK_THROWS_AS(lil_ratio(15, 1.0), std::invalid_argument);
    CHECK_NOTHROW(lil_ratio(16, 1.0));
}

TEST_CASE("gamma_ratio") {
    CHECK(gamma_ratio(100, 7.0, 0.0) == doctest::Approx(0.7).epsilon(1e-15));

    const std::uint64_t n = 10'000;
    const double g = 1.7;
    const double a = std::sqrt(static_cast<double>(n)) *
                     std::pow(std::log(static_cast<double>(n)), -g);
    CHECK(gamma_ratio(n, a, g) == doctest::Approx(1.0).epsilon(1e-12));

    // 100 (log 1e4) / sqrt(1e4) = log(1e4).
    CHECK(gamma_ratio(10'000, 100.0, 1.0) ==
          doctest::Approx(9.21034).epsilon(1e-5));

    CHECK_THROWS_AS(gamma_ratio(2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gamma_ratio is increasing in gamma and homogeneous in a") {
    for (std::uint64_t n : {3ULL, 16ULL, 1000ULL, 123456ULL}) {
        double prev = 0.0;
        for (double g : {0.0, 0.25, 0.5, 1.0, 2.0, 3.5}) {
            const double v = gamma_ratio(n, 5.0, g);
            REQUIRE(v > prev);
            prev = v;
            CHECK(gamma_ratio(n, 10.0, g) == doctest::Approx(2.0 * v));
        }
    }
    CHECK(lil_ratio(64, 6.0) == doctest::Approx(3.0 * lil_ratio(64, 2.0)));
}

TEST_CASE("checkpoint record on 16 alternating steps") {
    CountField field;
    FavoritesState favs;
    std::int64_t pos = 0, sbar = 0;
    for (int k = 0; k < 16; ++k) {
        const std::int64_t prev = pos;
        pos += (k % 2 == 0) ? 1 : -1;
        favs.update_on_step(field.record_step(prev, pos));
        sbar = std::max(sbar, pos);
    }
    const std::vector<double> gammas{0.5, 1.0, 2.0};
    const auto rec = record_checkpoint(field, favs, sbar, gammas);

    CHECK(rec.n == 16);
    CHECK(rec.xi_star == 9);   // site 0 visited at times 0,2,...,16
    CHECK(rec.L_star == 16);   // every step crosses edge 1
    CHECK(rec.card_K == 1);
    CHECK(rec.card_E == 1);
    CHECK(rec.maxabs_E == 1);
    CHECK(rec.minabs_E == 1);
    CHECK(rec.card_KD == 1);
    CHECK(rec.minabs_KD == 0);
    CHECK(!rec.kd_degenerate);
    CHECK(rec.sbar == 1);

    // Algebraic consistency, exact up to float rounding.
    const double norm = std::sqrt(2.0 * 16 * std::log(std::log(16.0)));
    CHECK(rec.lil_edge * norm ==
          doctest::Approx(static_cast<double>(rec.maxabs_E)).epsilon(1e-12));
    CHECK(rec.lil_site_count * norm ==
          doctest::Approx(9.0).epsilon(1e-12));
    REQUIRE(rec.gamma_ratios.size() == 3);
    CHECK(rec.gamma_ratios[1] ==
          doctest::Approx(gamma_ratio(16, 1.0, 1.0)).epsilon(1e-12));
    // Window half-widths at n=16: 2.40 (gamma 0.5), 1.44 (gamma 1), 0.52
    // (gamma 2). The favorite edge 1 falls outside only the last window.
    REQUIRE(rec.gap_edge.size() == 3);
    CHECK(rec.gap_edge[0] == 0.0);
    CHECK(rec.gap_edge[1] == 0.0);
    CHECK(rec.gap_edge[2] == 16.0);
}

TEST_CASE("running extrema") {
    RunningExtrema e;
    e.update(10, 3.0);
    e.update(20, 1.0);
    e.update(30, 2.0);
    CHECK(e.min_value == 1.0);
    CHECK(e.min_n == 20);
    CHECK(e.max_value == 3.0);
    CHECK(e.max_n == 10);

    // Re-feeding the same record does not move the extrema.
    e.update(30, 2.0);
    CHECK(e.min_value == 1.0);
    CHECK(e.max_value == 3.0);
    CHECK(e.min_n == 20);
    CHECK(e.max_n == 10);
}

TEST_CASE("inverse local time resolves r=0 at time 0") {
    InverseLocalTimeTracker t({0, 1});
    auto recs = t.finish();
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].r == 0);
    CHECK(recs[0].t_r == 0);
    CHECK(recs[0].completed);
    CHECK(!recs[1].completed);
}

TEST_CASE("P(T_1 = 2) = 1/2 by exhaustive two-step enumeration") {
    int hits = 0;
    for (int bits = 0; bits < 4; ++bits) {
        InverseLocalTimeTracker t({1});
        std::int64_t pos = 0;
        for (int k = 0; k < 2; ++k) {
            pos += (bits >> k) & 1 ? 1 : -1;
            t.step(pos);
        }
        const auto recs = t.finish();
        if (recs[0].completed && recs[0].t_r == 2) {
            ++hits;
        }
    }
    CHECK(hits == 2);
}

TEST_CASE("T_r records are strictly increasing with xi(0, T_r) = r + 1") {
    StepStream stream(Seed{77, 0});
    const std::vector<std::uint64_t> thresholds{0, 1, 2, 4, 8, 16, 32};
    InverseLocalTimeTracker t(thresholds);
    std::vector<std::int64_t> positions{0};
    std::int64_t pos = 0;
    while (!t.done()) {
        pos += stream.next_step();
        positions.push_back(pos);
        t.step(pos);
    }
    const auto recs = t.finish();
    std::uint64_t prev_t = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        REQUIRE(recs[i].completed);
        if (i > 0) {
            REQUIRE(recs[i].t_r > prev_t);
        }
        prev_t = recs[i].t_r;
        // Recount visits to the origin up to t_r.
        std::uint64_t visits = 0;
        for (std::uint64_t k = 0; k <= recs[i].t_r; ++k) {
            visits += positions[k] == 0;
        }
        REQUIRE(visits == recs[i].r + 1);
    }
}

TEST_CASE("thresholds must be strictly increasing") {
    CHECK_THROWS_AS(InverseLocalTimeTracker({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(InverseLocalTimeTracker({4, 2}), std::invalid_argument);
}

TEST_CASE("budget exhaustion marks records incomplete") {
    InverseLocalTimeTracker t({1'000'000});
    for (int k = 0; k < 100; ++k) {
        t.step(k % 2 == 0 ? -1 : 0);
    }
    const auto recs = t.finish();
    CHECK(!recs[0].completed);
    CHECK(recs[0].t_r == 100);
}
