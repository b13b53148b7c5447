#ifndef FAVWALK_WALK_HPP
#define FAVWALK_WALK_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace favwalk {

// Current time and position of one walk. position == sum of the first n
// steps, so |position| <= n and position = n (mod 2).
struct WalkState {
    std::uint64_t n = 0;
    std::int64_t position = 0;
};

inline WalkState advance(WalkState w, int step) {
    if (step != 1 && step != -1) {
        throw std::invalid_argument("advance: step must be +1 or -1");
    }
    return WalkState{w.n + 1, w.position + step};
}

// A stored step sequence, kept only when a run needs oracle replay.
struct RecordedPath {
    std::vector<std::int8_t> steps;

    std::uint64_t length() const { return steps.size(); }

    std::int64_t position_at(std::uint64_t m) const {
        std::int64_t s = 0;
        for (std::uint64_t k = 0; k < m; ++k) {
            s += steps[k];
        }
        return s;
    }
};

}  // namespace favwalk

#endif
