#ifndef FAVWALK_FAVORITES_HPP
#define FAVWALK_FAVORITES_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "favwalk/count_field.hpp"

namespace favwalk {

// Maximum of one local-time family together with the exact set of indices
// attaining it. Counts only ever step up by one, so an update either leaves
// the set alone, joins a tie, or collapses the set to the new record index.
class ArgmaxSet {
public:
    ArgmaxSet() { members_.reserve(8); }

    void update(std::int64_t index, std::int64_t value) {
        if (value > max_) {
            max_ = value;
            if (members_.size() == 1) {
                members_[0] = index;
            } else {
                members_.clear();
                members_.push_back(index);
            }
        } else if (value == max_) {
            insert_sorted(index);
        }
    }

    std::int64_t max_value() const { return max_; }
    const std::vector<std::int64_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }

private:
    void insert_sorted(std::int64_t index) {
        auto it = std::lower_bound(members_.begin(), members_.end(), index);
        if (it == members_.end() || *it != index) {
            members_.insert(it, index);
        }
    }

    std::int64_t max_ = 0;
    std::vector<std::int64_t> members_;
};

// (min |x|, max |x|) over a member set.
inline std::pair<std::int64_t, std::int64_t> extremal_abs(
    const std::vector<std::int64_t>& members) {
    if (members.empty()) {
        throw std::invalid_argument("extremal_abs: empty set");
    }
    std::int64_t mn = std::abs(members.front());
    std::int64_t mx = mn;
    for (std::int64_t x : members) {
        const std::int64_t a = std::abs(x);
        mn = std::min(mn, a);
        mx = std::max(mx, a);
    }
    return {mn, mx};
}

/**
 * The three favorite processes of one walk, maintained incrementally:
 * favorite sites (argmax of xi), favorite edges (argmax of L) and favorite
 * downcrossing sites (argmax of down).
 *
 * Until the walk has made its first down step every downcrossing count is
 * zero. That state is flagged degenerate: the favorite-downcrossing set is
 * then by convention the whole visited range, and lemma checks skip it.
 */
class FavoritesState {
public:
    FavoritesState() {
        sites_.update(0, 1);  // xi(0, 0) = 1
    }

    void update_on_step(const StepDelta& d) {
        sites_.update(d.site, d.site_count);
        edges_.update(d.edge, d.edge_count);
        if (d.went_down) {
            downcross_.update(d.down_site, d.down_count);
        }
        visited_lo_ = std::min(visited_lo_, d.site);
        visited_hi_ = std::max(visited_hi_, d.site);
    }

    const ArgmaxSet& sites() const { return sites_; }
    const ArgmaxSet& edges() const { return edges_; }
    const ArgmaxSet& downcross() const { return downcross_; }

    bool downcross_degenerate() const { return downcross_.max_value() == 0; }

    std::int64_t visited_lo() const { return visited_lo_; }
    std::int64_t visited_hi() const { return visited_hi_; }

    std::vector<std::int64_t> favorite_sites() const { return sites_.members(); }
    std::vector<std::int64_t> favorite_edges() const { return edges_.members(); }

    // Degenerate case: every visited site has downcrossing count zero, and
    // the walk visits a contiguous range, so the set is [lo, hi].
    std::vector<std::int64_t> favorite_downcross() const {
        if (!downcross_degenerate()) {
            return downcross_.members();
        }
        std::vector<std::int64_t> all;
        all.reserve(static_cast<std::size_t>(visited_hi_ - visited_lo_ + 1));
        for (std::int64_t x = visited_lo_; x <= visited_hi_; ++x) {
            all.push_back(x);
        }
        return all;
    }

private:
    ArgmaxSet sites_;
    ArgmaxSet edges_;
    ArgmaxSet downcross_;
    std::int64_t visited_lo_ = 0;
    std::int64_t visited_hi_ = 0;
};

// Deterministic fact about every path: each favorite edge sits directly
// above a favorite downcrossing site. Vacuously true while no down step
// has happened (the degenerate set contains every visited site).
inline bool check_edge_downcross_lemma(const FavoritesState& s) {
    if (s.downcross_degenerate()) {
        return true;
    }
    const auto& kd = s.downcross().members();
    for (std::int64_t x : s.edges().members()) {
        if (!std::binary_search(kd.begin(), kd.end(), x - 1)) {
            return false;
        }
    }
    return true;
}

}  // namespace favwalk

#endif
