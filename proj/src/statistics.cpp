#include "favwalk/statistics.hpp"

#include <cmath>
#include <stdexcept>

namespace favwalk {

double lil_ratio(std::uint64_t n, double a) {
    if (n < 16) {
        throw std::invalid_argument("lil_ratio: n must be >= 16");
    }
    const double dn = static_cast<double>(n);
    return a / std::sqrt(2.0 * dn * std::log(std::log(dn)));
}

double gamma_ratio(std::uint64_t n, double a, double gamma) {
    if (n < 3) {
        throw std::invalid_argument("gamma_ratio: n must be >= 3");
    }
    const double dn = static_cast<double>(n);
    return a * std::pow(std::log(dn), gamma) / std::sqrt(dn);
}

CheckpointRecord record_checkpoint(const CountField& field,
                                   const FavoritesState& favs,
                                   std::int64_t sbar,
                                   const std::vector<double>& gammas) {
    CheckpointRecord rec;
    rec.n = field.n();

    rec.xi_star = favs.sites().max_value();
    rec.L_star = favs.edges().max_value();
    rec.card_K = static_cast<std::int64_t>(favs.sites().size());
    rec.card_E = static_cast<std::int64_t>(favs.edges().size());

    auto [mnK, mxK] = extremal_abs(favs.sites().members());
    rec.minabs_K = mnK;
    rec.maxabs_K = mxK;
    auto [mnE, mxE] = extremal_abs(favs.edges().members());
    rec.minabs_E = mnE;
    rec.maxabs_E = mxE;

    rec.kd_degenerate = favs.downcross_degenerate();
    if (rec.kd_degenerate) {
        // Whole visited range; 0 is always visited.
        rec.card_KD = favs.visited_hi() - favs.visited_lo() + 1;
        rec.minabs_KD = 0;
        rec.maxabs_KD = std::max(std::abs(favs.visited_lo()),
                                 std::abs(favs.visited_hi()));
    } else {
        rec.card_KD = static_cast<std::int64_t>(favs.downcross().size());
        auto [mnD, mxD] = extremal_abs(favs.downcross().members());
        rec.minabs_KD = mnD;
        rec.maxabs_KD = mxD;
    }

    rec.sbar = sbar;
    rec.lil_edge = lil_ratio(rec.n, static_cast<double>(rec.maxabs_E));
    rec.lil_site_count = lil_ratio(rec.n, static_cast<double>(rec.xi_star));
    rec.sbar_lil = lil_ratio(rec.n, static_cast<double>(rec.sbar));

    const double dn = static_cast<double>(rec.n);
    rec.gamma_ratios.reserve(gammas.size());
    rec.gap_edge.reserve(gammas.size());
    for (double g : gammas) {
        rec.gamma_ratios.push_back(
            gamma_ratio(rec.n, static_cast<double>(rec.minabs_E), g));
        // Window half-width sqrt(n) (log n)^-gamma, clipped to the visited
        // range; the gap to the global edge maximum is recorded raw.
        const double h = std::sqrt(dn) * std::pow(std::log(dn), -g);
        const std::int64_t hw = static_cast<std::int64_t>(h);
        std::int64_t best = 0;
        const std::int64_t x_lo = std::max(field.lo(), -hw);
        const std::int64_t x_hi = std::min(field.hi() + 1, hw);
        for (std::int64_t x = x_lo; x <= x_hi; ++x) {
            best = std::max(best, field.edge_count(x));
        }
        rec.gap_edge.push_back(static_cast<double>(rec.L_star - best));
    }
    return rec;
}

InverseLocalTimeTracker::InverseLocalTimeTracker(
    std::vector<std::uint64_t> thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (thresholds[i] <= thresholds[i - 1]) {
            throw std::invalid_argument(
                "inverse local time: thresholds must be strictly increasing");
        }
    }
    records_.reserve(thresholds.size());
    for (std::uint64_t r : thresholds) {
        records_.push_back({r, 0, false});
    }
    resolve();  // r = 0 resolves at n = 0 since xi(0, 0) = 1
}

std::vector<InverseLocalTimeRecord> InverseLocalTimeTracker::finish() {
    for (std::size_t i = next_; i < records_.size(); ++i) {
        records_[i].t_r = n_;
        records_[i].completed = false;
    }
    return records_;
}

}  // namespace favwalk
