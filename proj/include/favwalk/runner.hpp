#ifndef FAVWALK_RUNNER_HPP
#define FAVWALK_RUNNER_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "favwalk/schedule.hpp"
#include "favwalk/statistics.hpp"
#include "favwalk/walk.hpp"

namespace favwalk {

// One experiment run: seeding, budget, checkpoint grid, gamma grid,
// parallelism and output targets. Every output file is a pure function of
// this struct (worker count only changes wall time).
struct RunConfig {
    std::uint64_t base_seed = 1;
    std::uint32_t replicas = 1;
    std::uint64_t steps = 1'000'000;
    ScheduleSpec schedule{ScheduleKind::geometric, 2.0, 16, 0};  // n_max: see resolve
    std::vector<double> gammas = {0.5, 1.0, 2.0};
    std::vector<std::uint64_t> thresholds;  // inverse-local-time mode
    unsigned workers = 1;
    std::string out_dir;
    bool record_path = false;

    void validate() const;
    // Grid points plus the final step count, if not already on the grid.
    std::vector<std::uint64_t> checkpoints() const;
};

// Counts of time points n (not checkpoints) with a given number of favorite
// edges, bucketed by decade of n: decade d covers [10^d, 10^(d+1)).
struct CardinalityTally {
    static constexpr int kDecades = 19;
    // [decade][0..3] = #E == 1, 2, 3, >= 4
    std::array<std::array<std::uint64_t, 4>, kDecades> buckets{};

    void note(std::uint64_t n, std::size_t card_E) {
        if (n >= next_boundary_) {
            while (n >= next_boundary_) {
                next_boundary_ *= 10;
                ++decade_;
            }
        }
        const std::size_t c = card_E >= 4 ? 3 : card_E - 1;
        ++buckets[static_cast<std::size_t>(decade_)][c];
    }

    std::uint64_t count_ge4(int decade) const {
        return buckets[static_cast<std::size_t>(decade)][3];
    }

private:
    std::uint64_t next_boundary_ = 10;
    int decade_ = 0;
};

struct ReplicaResult {
    std::uint32_t replica = 0;
    std::vector<CheckpointRecord> records;
    CardinalityTally tally;
    std::optional<RecordedPath> path;
};

ReplicaResult run_replica(const RunConfig& config, std::uint32_t replica);

// Runs all replicas on a worker pool; results are indexed by replica, so
// the outcome does not depend on scheduling.
std::vector<ReplicaResult> run_sweep(const RunConfig& config);

struct InverseLocalTimeResult {
    std::uint32_t replica = 0;
    std::vector<InverseLocalTimeRecord> records;
};

InverseLocalTimeResult run_invlt_replica(const RunConfig& config,
                                         std::uint32_t replica);
std::vector<InverseLocalTimeResult> run_invlt(const RunConfig& config);

// ---------------------------------------------------------------------------
// CSV emission. Fixed column order, header row, floats at 17 significant
// digits, LF line endings.

std::string format_double(double v);
std::string gamma_column_suffix(double gamma);

void write_checkpoint_csv(std::ostream& os,
                          const std::vector<ReplicaResult>& results,
                          const std::vector<double>& gammas);
void write_summary_csv(std::ostream& os,
                       const std::vector<ReplicaResult>& results,
                       const std::vector<double>& gammas,
                       std::uint64_t gamma_window_min = 10'000);
void write_cardinality_csv(std::ostream& os,
                           const std::vector<ReplicaResult>& results);
void write_invlt_csv(std::ostream& os,
                     const std::vector<InverseLocalTimeResult>& results);

}  // namespace favwalk

#endif
