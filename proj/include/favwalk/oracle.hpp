#ifndef FAVWALK_ORACLE_HPP
#define FAVWALK_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "favwalk/count_field.hpp"
#include "favwalk/favorites.hpp"
#include "favwalk/walk.hpp"

namespace favwalk::oracle {

// Brute-force local times, recomputed from a stored path by direct scan.
// Kept on std::map so the code path shares nothing with the dense tracker
// it cross-checks.
struct BruteField {
    std::map<std::int64_t, std::int64_t> xi, up, down;
    std::uint64_t n = 0;
    std::int64_t lo = 0, hi = 0;
    std::int64_t final_position = 0;

    std::int64_t xi_at(std::int64_t x) const;
    std::int64_t up_at(std::int64_t x) const;
    std::int64_t down_at(std::int64_t x) const;
    std::int64_t edge_at(std::int64_t x) const;  // L(x) = up(x) + down(x-1)
};

BruteField brute_local_times(const RecordedPath& path, std::uint64_t m);

struct BruteFavorites {
    std::vector<std::int64_t> sites;      // K(n)
    std::vector<std::int64_t> edges;      // E(n)
    std::vector<std::int64_t> downcross;  // K_D(n), full visited range if degenerate
    bool kd_degenerate = false;
    std::int64_t xi_star = 0;
    std::int64_t edge_star = 0;
    std::int64_t down_star = 0;
};

BruteFavorites brute_favorites(const RecordedPath& path, std::uint64_t m);

// ---------------------------------------------------------------------------
// Exact enumeration over all 2^n paths.

enum class Statistic {
    card_K,
    card_E,
    card_KD,
    xi_star,
    L_star,
    minabs_E,
    maxabs_E,
    sbar,
};

std::optional<Statistic> statistic_from_name(const std::string& name);
std::string statistic_name(Statistic s);

// Exact law of one integer statistic under the uniform measure on all 2^n
// step sequences. Masses are dyadic: count / 2^n.
struct ExactDistribution {
    int n = 0;
    Statistic statistic{};
    std::map<std::int64_t, std::uint64_t> counts;

    std::uint64_t total_paths() const { return std::uint64_t{1} << n; }
    double probability(std::int64_t value) const;
    // expectation = expectation_numerator() / 2^n, exactly.
    std::int64_t expectation_numerator() const;
    double expectation() const;
};

inline constexpr int kMaxEnumerationN = 24;

ExactDistribution enumerate_paths(int n, Statistic statistic, unsigned workers = 1);

// ---------------------------------------------------------------------------
// Invariant and equivalence checks.
//
// I1  sum_x xi(x) = n + 1
// I2  sum_x L(x) = n
// I3  xi(x) = up(x) + down(x) + [x == 0]
// I4  alternation: edge x >= 1: up(x) - down(x-1) = [S_n >= x]
//                  edge x <= 0: down(x-1) - up(x) = [S_n <= x-1]
// I5  counts nonnegative, zero outside [lo, hi]

std::optional<std::string> check_field_invariants(const CountField& field,
                                                  std::int64_t current_position);

std::optional<std::string> check_against_brute(const CountField& field,
                                               const FavoritesState& favs,
                                               const RecordedPath& path,
                                               std::uint64_t m);

struct VerifyReport {
    std::uint64_t paths_checked = 0;
    std::uint64_t prefixes_checked = 0;
    std::uint64_t lemma_checks = 0;
    std::uint64_t lemma_skipped_degenerate = 0;
    std::uint64_t failures = 0;
    std::string first_failure;         // empty when clean
    std::uint64_t first_failure_prefix = 0;

    bool ok() const { return failures == 0; }
    void note_failure(std::uint64_t prefix, const std::string& what);
    void merge(const VerifyReport& other);
};

struct VerifyOptions {
    bool check_invariants = true;
    bool check_brute = true;
    bool check_lemma = true;
    // With lemma_every_step the lemma runs after every step; otherwise only
    // at the sampled check times.
    bool lemma_every_step = true;
    // Empty means every prefix; otherwise the sorted prefix times to check.
    std::vector<std::uint64_t> check_times;
};

VerifyReport verify_path(const RecordedPath& path, const VerifyOptions& options);

// Replays every path of length n, checking every prefix.
VerifyReport exhaustive_verify(int n, const VerifyOptions& options,
                               unsigned workers = 1);

}  // namespace favwalk::oracle

#endif
