#ifndef FAVWALK_SCHEDULE_HPP
#define FAVWALK_SCHEDULE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace favwalk {

// Checkpoint grids. geometric: ceil(n_min * c^k); exppow: ceil(exp(k^p));
// superexp: k^(5k). Points are deduplicated, strictly increasing and
// restricted to [n_min, n_max].
enum class ScheduleKind { geometric, exppow, superexp };

struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::geometric;
    double param = 2.0;  // ratio c for geometric, exponent p for exppow
    std::uint64_t n_min = 16;
    std::uint64_t n_max = 0;
};

std::vector<std::uint64_t> schedule_points(const ScheduleSpec& spec);

// "geometric:1.5", "exppow:1.5", "superexp"
ScheduleSpec parse_schedule(const std::string& text, std::uint64_t n_max);
std::string schedule_to_string(const ScheduleSpec& spec);

}  // namespace favwalk

#endif
