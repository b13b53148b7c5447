#ifndef FAVWALK_COUNT_FIELD_HPP
#define FAVWALK_COUNT_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace favwalk {

// What one step changed: the visited site's new count, the crossed edge's
// new count, and (for a down step) the downcrossing site's new count.
// Edge x is the bond between sites x-1 and x, indexed by its upper
// endpoint, so the crossed edge index is max(prev, next).
struct StepDelta {
    std::int64_t site;
    std::int64_t site_count;
    std::int64_t edge;
    std::int64_t edge_count;
    std::int64_t down_site;
    std::int64_t down_count;
    bool went_down;
};

/**
 * Dense per-site counters over the visited range [lo, hi]:
 *
 *   xi(x)   visits to x, time 0 included
 *   up(x)   upcrossings  S_{k-1} = x-1 -> S_k = x
 *   down(x) downcrossings S_{k-1} = x+1 -> S_k = x
 *
 * The edge local time is derived, never stored:
 *   L(x) = up(x) + down(x-1).
 *
 * Storage is an origin-offset array that doubles whenever the walk leaves
 * the allocated span. The visited range grows like sqrt(n), so even very
 * long runs stay within a few hundred thousand cells.
 */
class CountField {
public:
    explicit CountField(std::size_t capacity_hint = 1024) {
        std::size_t cap = std::max<std::size_t>(capacity_hint, 16);
        xi_.assign(cap, 0);
        up_.assign(cap, 0);
        down_.assign(cap, 0);
        origin_ = static_cast<std::int64_t>(cap / 2);
        cap_lo_ = -origin_;
        cap_hi_ = static_cast<std::int64_t>(cap) - origin_ - 1;
        xi_[static_cast<std::size_t>(origin_)] = 1;  // time 0 counts the origin
    }

    // Suggests a capacity that almost surely avoids regrowth for a run of
    // `steps` steps (range is O(sqrt(n)) with high probability).
    static std::size_t capacity_for_steps(std::uint64_t steps) {
        std::size_t want = 64;
        while (static_cast<std::uint64_t>(want) * want < 144 * steps &&
               want < (std::size_t{1} << 24)) {
            want *= 2;
        }
        return std::max<std::size_t>(want, 1024);
    }

    StepDelta record_step(std::int64_t prev, std::int64_t next) {
        if (next - prev != 1 && prev - next != 1) {
            throw std::invalid_argument("record_step: |next - prev| != 1");
        }
        if (next < cap_lo_ || next > cap_hi_) {
            grow(next);
        }
        ++n_;
        lo_ = std::min(lo_, next);
        hi_ = std::max(hi_, next);
        const std::size_t slot = static_cast<std::size_t>(next + origin_);
        const std::int64_t site_count = ++xi_[slot];
        StepDelta d;
        d.site = next;
        d.site_count = site_count;
        if (next > prev) {
            const std::int64_t u = ++up_[slot];
            d.edge = next;
            d.edge_count = u + down_[slot - 1];
            d.down_site = 0;
            d.down_count = 0;
            d.went_down = false;
        } else {
            const std::int64_t dn = ++down_[slot];
            d.edge = next + 1;
            d.edge_count = up_[slot + 1] + dn;
            d.down_site = next;
            d.down_count = dn;
            d.went_down = true;
        }
        return d;
    }

    // Accessors return 0 outside the visited range.
    std::int64_t site_count(std::int64_t x) const { return at(xi_, x); }
    std::int64_t upcross_count(std::int64_t x) const { return at(up_, x); }
    std::int64_t downcross_count(std::int64_t x) const { return at(down_, x); }
    std::int64_t edge_count(std::int64_t x) const {
        return at(up_, x) + at(down_, x - 1);
    }

    std::uint64_t n() const { return n_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }

private:
    std::int64_t at(const std::vector<std::int64_t>& v, std::int64_t x) const {
        if (x < lo_ || x > hi_) {
            return 0;
        }
        return v[static_cast<std::size_t>(x + origin_)];
    }

    void grow(std::int64_t need) {
        std::size_t cap = xi_.size();
        std::int64_t new_origin = origin_;
        do {
            cap *= 2;
            new_origin = static_cast<std::int64_t>(cap / 2);
        } while (need < -new_origin ||
                 need > static_cast<std::int64_t>(cap) - new_origin - 1);
        regrow(xi_, cap, new_origin);
        regrow(up_, cap, new_origin);
        regrow(down_, cap, new_origin);
        origin_ = new_origin;
        cap_lo_ = -origin_;
        cap_hi_ = static_cast<std::int64_t>(xi_.size()) - origin_ - 1;
    }

    void regrow(std::vector<std::int64_t>& v, std::size_t cap,
                std::int64_t new_origin) {
        std::vector<std::int64_t> next(cap, 0);
        for (std::int64_t x = lo_; x <= hi_; ++x) {
            next[static_cast<std::size_t>(x + new_origin)] =
                v[static_cast<std::size_t>(x + origin_)];
        }
        v.swap(next);
    }

    std::vector<std::int64_t> xi_, up_, down_;
    std::int64_t origin_ = 0;
    std::int64_t cap_lo_ = 0;
    std::int64_t cap_hi_ = 0;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0;
    std::uint64_t n_ = 0;
};

}  // namespace favwalk

#endif
