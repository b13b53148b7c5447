#ifndef FAVWALK_STATISTICS_HPP
#define FAVWALK_STATISTICS_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "favwalk/count_field.hpp"
#include "favwalk/favorites.hpp"

namespace favwalk {

// a / sqrt(2 n log log n), natural logs. Needs n >= 16 so log log n > 0.
double lil_ratio(std::uint64_t n, double a);

// a / (sqrt(n) (log n)^-gamma) = a (log n)^gamma / sqrt(n). Needs n >= 3.
double gamma_ratio(std::uint64_t n, double a, double gamma);

// Every scaled functional of one walk at one checkpoint time.
struct CheckpointRecord {
    std::uint64_t n = 0;
    std::int64_t xi_star = 0;
    std::int64_t L_star = 0;
    std::int64_t card_K = 0;
    std::int64_t card_E = 0;
    std::int64_t card_KD = 0;
    bool kd_degenerate = false;
    std::int64_t minabs_K = 0, maxabs_K = 0;
    std::int64_t minabs_E = 0, maxabs_E = 0;
    std::int64_t minabs_KD = 0, maxabs_KD = 0;
    std::int64_t sbar = 0;
    double lil_edge = 0.0;        // maxabs_E / sqrt(2 n log log n)
    double lil_site_count = 0.0;  // xi_star / sqrt(2 n log log n)
    double sbar_lil = 0.0;        // sbar / sqrt(2 n log log n)
    // Per gamma in the configured grid, in grid order:
    std::vector<double> gamma_ratios;  // minabs_E (log n)^gamma / sqrt(n)
    // Raw gap L_star - max_{|x| <= sqrt(n)(log n)^-gamma} L(x), unthresholded.
    std::vector<double> gap_edge;
};

CheckpointRecord record_checkpoint(const CountField& field,
                                   const FavoritesState& favs,
                                   std::int64_t sbar,
                                   const std::vector<double>& gammas);

// Empirical liminf/limsup proxies: running extrema over the checkpoints
// seen so far, with the attaining time.
struct RunningExtrema {
    double min_value = std::numeric_limits<double>::infinity();
    std::uint64_t min_n = 0;
    double max_value = -std::numeric_limits<double>::infinity();
    std::uint64_t max_n = 0;
    std::uint64_t count = 0;

    void update(std::uint64_t n, double value) {
        ++count;
        if (value < min_value) {
            min_value = value;
            min_n = n;
        }
        if (value > max_value) {
            max_value = value;
            max_n = n;
        }
    }
};

// First time the origin's visit count exceeds r. Feed the walk position
// after each step; thresholds resolve in order.
struct InverseLocalTimeRecord {
    std::uint64_t r = 0;
    std::uint64_t t_r = 0;
    bool completed = false;
};

class InverseLocalTimeTracker {
public:
    // Thresholds must be strictly increasing and nonnegative.
    explicit InverseLocalTimeTracker(std::vector<std::uint64_t> thresholds);

    // Position after step n (n = 1, 2, ...). Returns true while thresholds
    // remain unresolved.
    bool step(std::int64_t position) {
        ++n_;
        if (position == 0) {
            ++origin_visits_;
            resolve();
        }
        return next_ < records_.size();
    }

    bool done() const { return next_ >= records_.size(); }

    // Marks unresolved thresholds incomplete; t_r is left at the number of
    // steps taken (a lower bound).
    std::vector<InverseLocalTimeRecord> finish();

private:
    void resolve() {
        while (next_ < records_.size() &&
               origin_visits_ > records_[next_].r) {
            records_[next_].t_r = n_;
            records_[next_].completed = true;
            ++next_;
        }
    }

    std::vector<InverseLocalTimeRecord> records_;
    std::size_t next_ = 0;
    std::uint64_t n_ = 0;
    std::uint64_t origin_visits_ = 1;  // xi(0, 0) = 1
};

}  // namespace favwalk

#endif
