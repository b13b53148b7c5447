#include "favwalk/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "favwalk/count_field.hpp"
#include "favwalk/favorites.hpp"
#include "favwalk/rng.hpp"

namespace favwalk {

void RunConfig::validate() const {
    if (replicas < 1) {
        throw std::invalid_argument("config: replicas must be >= 1");
    }
    if (steps < 16) {
        throw std::invalid_argument("config: steps must be >= 16");
    }
    if (gammas.empty()) {
        throw std::invalid_argument("config: gamma grid must be nonempty");
    }
    if (workers < 1) {
        throw std::invalid_argument("config: workers must be >= 1");
    }
    if (record_path &&
        static_cast<std::uint64_t>(replicas) * steps > (std::uint64_t{1} << 31)) {
        throw std::invalid_argument(
            "config: path recording is for oracle-verification runs; "
            "replicas * steps must stay below 2^31");
    }
}

std::vector<std::uint64_t> RunConfig::checkpoints() const {
    ScheduleSpec spec = schedule;
    if (spec.n_max == 0 || spec.n_max > steps) {
        spec.n_max = steps;
    }
    std::vector<std::uint64_t> points = schedule_points(spec);
    if (points.empty() || points.back() != steps) {
        points.push_back(steps);
    }
    return points;
}

ReplicaResult run_replica(const RunConfig& config, std::uint32_t replica) {
    config.validate();
    const std::vector<std::uint64_t> cps = config.checkpoints();

    ReplicaResult result;
    result.replica = replica;
    result.records.reserve(cps.size());
    if (config.record_path) {
        result.path = RecordedPath{};
        result.path->steps.reserve(config.steps);
    }

    StepStream stream(Seed{config.base_seed, replica});
    CountField field(CountField::capacity_for_steps(config.steps));
    FavoritesState favs;
    WalkState walk;
    std::int64_t sbar = 0;

    std::size_t cp_index = 0;
    std::uint64_t next_cp = cps[0];

    for (std::uint64_t n = 1; n <= config.steps; ++n) {
        const int step = stream.next_step();
        const std::int64_t prev = walk.position;
        walk = advance(walk, step);
        favs.update_on_step(field.record_step(prev, walk.position));
        if (walk.position > sbar) {
            sbar = walk.position;
        }
        result.tally.note(n, favs.edges().size());
        if (config.record_path) {
            result.path->steps.push_back(static_cast<std::int8_t>(step));
        }
        if (n == next_cp) {
            result.records.push_back(
                record_checkpoint(field, favs, sbar, config.gammas));
            ++cp_index;
            next_cp = cp_index < cps.size() ? cps[cp_index] : 0;
        }
    }
    return result;
}

namespace {

template <typename Result, typename Fn>
std::vector<Result> pooled(std::uint32_t replicas, unsigned workers, Fn fn) {
    std::vector<Result> results(replicas);
    if (workers <= 1 || replicas <= 1) {
        for (std::uint32_t r = 0; r < replicas; ++r) {
            results[r] = fn(r);
        }
        return results;
    }
    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
        for (std::uint32_t r = next.fetch_add(1); r < replicas;
             r = next.fetch_add(1)) {
            results[r] = fn(r);
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(workers, replicas);
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    return results;
}

}  // namespace

std::vector<ReplicaResult> run_sweep(const RunConfig& config) {
    config.validate();
    return pooled<ReplicaResult>(config.replicas, config.workers,
                                 [&](std::uint32_t r) { return run_replica(config, r); });
}

InverseLocalTimeResult run_invlt_replica(const RunConfig& config,
                                         std::uint32_t replica) {
    if (config.thresholds.empty()) {
        throw std::invalid_argument("invlt: thresholds must be nonempty");
    }
    InverseLocalTimeResult result;
    result.replica = replica;

    StepStream stream(Seed{config.base_seed, replica});
    InverseLocalTimeTracker tracker(config.thresholds);
    std::int64_t pos = 0;
    for (std::uint64_t n = 1; n <= config.steps && !tracker.done(); ++n) {
        pos += stream.next_step();
        tracker.step(pos);
    }
    result.records = tracker.finish();
    return result;
}

std::vector<InverseLocalTimeResult> run_invlt(const RunConfig& config) {
    config.validate();
    return pooled<InverseLocalTimeResult>(
        config.replicas, config.workers,
        [&](std::uint32_t r) { return run_invlt_replica(config, r); });
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string gamma_column_suffix(double gamma) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", gamma);
    return buf;
}

void write_checkpoint_csv(std::ostream& os,
                          const std::vector<ReplicaResult>& results,
                          const std::vector<double>& gammas) {
    os << "replica,n,xi_star,L_star,card_K,card_E,card_KD,kd_degenerate,"
          "minabs_K,maxabs_K,minabs_E,maxabs_E,minabs_KD,maxabs_KD,sbar,"
          "lil_edge,lil_site,sbar_lil";
    for (double g : gammas) {
        os << ",gamma_" << gamma_column_suffix(g);
    }
    for (double g : gammas) {
        os << ",gap_" << gamma_column_suffix(g);
    }
    os << "\n";
    for (const auto& res : results) {
        for (const auto& r : res.records) {
            os << res.replica << ',' << r.n << ',' << r.xi_star << ','
               << r.L_star << ',' << r.card_K << ',' << r.card_E << ','
               << r.card_KD << ',' << (r.kd_degenerate ? 1 : 0) << ','
               << r.minabs_K << ',' << r.maxabs_K << ',' << r.minabs_E << ','
               << r.maxabs_E << ',' << r.minabs_KD << ',' << r.maxabs_KD << ','
               << r.sbar << ',' << format_double(r.lil_edge) << ','
               << format_double(r.lil_site_count) << ','
               << format_double(r.sbar_lil);
            for (double v : r.gamma_ratios) {
                os << ',' << format_double(v);
            }
            for (double v : r.gap_edge) {
                os << ',' << format_double(v);
            }
            os << "\n";
        }
    }
}

namespace {

// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    if (v.empty()) {
        return 0.0;
    }
    const double idx = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double w = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - w) + v[hi] * w;
}

}  // namespace

void write_summary_csv(std::ostream& os,
                       const std::vector<ReplicaResult>& results,
                       const std::vector<double>& gammas,
                       std::uint64_t gamma_window_min) {
    os << "n,lil_edge_q10,lil_edge_med,lil_edge_q90,"
          "lil_site_q10,lil_site_med,lil_site_q90,"
          "sbar_lil_q10,sbar_lil_med,sbar_lil_q90,"
          "runmax_lil_edge_med,runmax_lil_site_med";
    for (double g : gammas) {
        const std::string s = gamma_column_suffix(g);
        os << ",gamma_" << s << "_q10,gamma_" << s << "_med,gamma_" << s
           << "_q90,runmin_gamma_" << s << "_med";
    }
    os << "\n";
    if (results.empty() || results.front().records.empty()) {
        return;
    }
    const std::size_t n_cp = results.front().records.size();
    const std::size_t n_rep = results.size();
    std::vector<RunningExtrema> run_edge(n_rep), run_site(n_rep);
    std::vector<std::vector<RunningExtrema>> run_gamma(
        n_rep, std::vector<RunningExtrema>(gammas.size()));

    for (std::size_t c = 0; c < n_cp; ++c) {
        std::vector<double> lil_edge, lil_site, sbar_lil;
        std::vector<double> runmax_edge, runmax_site;
        std::vector<std::vector<double>> gam(gammas.size()),
            rungam(gammas.size());
        for (std::size_t i = 0; i < n_rep; ++i) {
            const CheckpointRecord& r = results[i].records[c];
            lil_edge.push_back(r.lil_edge);
            lil_site.push_back(r.lil_site_count);
            sbar_lil.push_back(r.sbar_lil);
            run_edge[i].update(r.n, r.lil_edge);
            run_site[i].update(r.n, r.lil_site_count);
            runmax_edge.push_back(run_edge[i].max_value);
            runmax_site.push_back(run_site[i].max_value);
            for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
                gam[gi].push_back(r.gamma_ratios[gi]);
                if (r.n >= gamma_window_min) {
                    run_gamma[i][gi].update(r.n, r.gamma_ratios[gi]);
                }
                if (run_gamma[i][gi].count > 0) {
                    rungam[gi].push_back(run_gamma[i][gi].min_value);
                }
            }
        }
        os << results.front().records[c].n << ','
           << format_double(quantile(lil_edge, 0.10)) << ','
           << format_double(quantile(lil_edge, 0.50)) << ','
           << format_double(quantile(lil_edge, 0.90)) << ','
           << format_double(quantile(lil_site, 0.10)) << ','
           << format_double(quantile(lil_site, 0.50)) << ','
           << format_double(quantile(lil_site, 0.90)) << ','
           << format_double(quantile(sbar_lil, 0.10)) << ','
           << format_double(quantile(sbar_lil, 0.50)) << ','
           << format_double(quantile(sbar_lil, 0.90)) << ','
           << format_double(quantile(runmax_edge, 0.50)) << ','
           << format_double(quantile(runmax_site, 0.50));
        for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
            os << ',' << format_double(quantile(gam[gi], 0.10)) << ','
               << format_double(quantile(gam[gi], 0.50)) << ','
               << format_double(quantile(gam[gi], 0.90)) << ',';
            if (rungam[gi].size() == n_rep) {
                os << format_double(quantile(rungam[gi], 0.50));
            } else {
                os << "nan";
            }
        }
        os << "\n";
    }
}

void write_cardinality_csv(std::ostream& os,
                           const std::vector<ReplicaResult>& results) {
    os << "replica,decade_lo,card1,card2,card3,card4plus\n";
    for (const auto& res : results) {
        std::uint64_t decade_lo = 1;
        for (int d = 0; d < CardinalityTally::kDecades; ++d) {
            const auto& b = res.tally.buckets[static_cast<std::size_t>(d)];
            if (b[0] + b[1] + b[2] + b[3] > 0) {
                os << res.replica << ',' << decade_lo << ',' << b[0] << ','
                   << b[1] << ',' << b[2] << ',' << b[3] << "\n";
            }
            if (decade_lo > std::uint64_t{1} << 60) {
                break;
            }
            decade_lo *= 10;
        }
    }
}

void write_invlt_csv(std::ostream& os,
                     const std::vector<InverseLocalTimeResult>& results) {
    os << "replica,r,t_r,completed\n";
    for (const auto& res : results) {
        for (const auto& r : res.records) {
            os << res.replica << ',' << r.r << ',' << r.t_r << ','
               << (r.completed ? 1 : 0) << "\n";
        }
    }
}

}  // namespace favwalk
