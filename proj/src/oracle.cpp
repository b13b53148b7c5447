#include "favwalk/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace favwalk::oracle {

namespace {

std::int64_t map_at(const std::map<std::int64_t, std::int64_t>& m,
                    std::int64_t x) {
    auto it = m.find(x);
    return it == m.end() ? 0 : it->second;
}

std::vector<std::int64_t> argmax_keys(
    const std::map<std::int64_t, std::int64_t>& m, std::int64_t max) {
    std::vector<std::int64_t> out;
    for (const auto& [k, v] : m) {
        if (v == max) {
            out.push_back(k);
        }
    }
    return out;
}

}  // namespace

std::int64_t BruteField::xi_at(std::int64_t x) const { return map_at(xi, x); }
std::int64_t BruteField::up_at(std::int64_t x) const { return map_at(up, x); }
std::int64_t BruteField::down_at(std::int64_t x) const { return map_at(down, x); }
std::int64_t BruteField::edge_at(std::int64_t x) const {
    return map_at(up, x) + map_at(down, x - 1);
}

BruteField brute_local_times(const RecordedPath& path, std::uint64_t m) {
    if (m > path.length()) {
        throw std::invalid_argument("brute_local_times: prefix longer than path");
    }
    BruteField f;
    f.n = m;
    std::int64_t pos = 0;
    f.xi[0] = 1;
    for (std::uint64_t k = 0; k < m; ++k) {
        const std::int64_t prev = pos;
        pos += path.steps[k];
        ++f.xi[pos];
        if (pos > prev) {
            ++f.up[pos];
        } else {
            ++f.down[pos];
        }
        f.lo = std::min(f.lo, pos);
        f.hi = std::max(f.hi, pos);
    }
    f.final_position = pos;
    return f;
}

BruteFavorites brute_favorites(const RecordedPath& path, std::uint64_t m) {
    const BruteField f = brute_local_times(path, m);
    BruteFavorites out;
    for (const auto& [x, v] : f.xi) {
        out.xi_star = std::max(out.xi_star, v);
    }
    out.sites = argmax_keys(f.xi, out.xi_star);

    // Edge counts only exist where a crossing happened.
    std::map<std::int64_t, std::int64_t> edge;
    for (const auto& [x, v] : f.up) {
        edge[x] += v;
    }
    for (const auto& [x, v] : f.down) {
        edge[x + 1] += v;
    }
    for (const auto& [x, v] : edge) {
        out.edge_star = std::max(out.edge_star, v);
    }
    if (out.edge_star > 0) {
        out.edges = argmax_keys(edge, out.edge_star);
    }

    for (const auto& [x, v] : f.down) {
        out.down_star = std::max(out.down_star, v);
    }
    if (out.down_star > 0) {
        out.downcross = argmax_keys(f.down, out.down_star);
    } else {
        out.kd_degenerate = true;
        for (std::int64_t x = f.lo; x <= f.hi; ++x) {
            out.downcross.push_back(x);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<Statistic> statistic_from_name(const std::string& name) {
    if (name == "card_K") return Statistic::card_K;
    if (name == "card_E") return Statistic::card_E;
    if (name == "card_KD") return Statistic::card_KD;
    if (name == "xi_star") return Statistic::xi_star;
    if (name == "L_star") return Statistic::L_star;
    if (name == "minabs_E") return Statistic::minabs_E;
    if (name == "maxabs_E") return Statistic::maxabs_E;
    if (name == "sbar") return Statistic::sbar;
    return std::nullopt;
}

std::string statistic_name(Statistic s) {
    switch (s) {
        case Statistic::card_K: return "card_K";
        case Statistic::card_E: return "card_E";
        case Statistic::card_KD: return "card_KD";
        case Statistic::xi_star: return "xi_star";
        case Statistic::L_star: return "L_star";
        case Statistic::minabs_E: return "minabs_E";
        case Statistic::maxabs_E: return "maxabs_E";
        case Statistic::sbar: return "sbar";
    }
    return "?";
}

double ExactDistribution::probability(std::int64_t value) const {
    auto it = counts.find(value);
    if (it == counts.end()) {
        return 0.0;
    }
    return static_cast<double>(it->second) /
           static_cast<double>(total_paths());
}

std::int64_t ExactDistribution::expectation_numerator() const {
    std::int64_t num = 0;
    for (const auto& [value, count] : counts) {
        num += value * static_cast<std::int64_t>(count);
    }
    return num;
}

double ExactDistribution::expectation() const {
    return static_cast<double>(expectation_numerator()) /
           static_cast<double>(total_paths());
}

namespace {

// Per-path evaluator over small fixed buffers; reset by clearing only the
// touched range.
class PathStatEvaluator {
public:
    explicit PathStatEvaluator(int n)
        : n_(n),
          off_(n),
          xi_(2 * static_cast<std::size_t>(n) + 1, 0),
          up_(2 * static_cast<std::size_t>(n) + 1, 0),
          down_(2 * static_cast<std::size_t>(n) + 1, 0) {}

    std::int64_t evaluate(std::uint64_t bits, Statistic stat) {
        std::int64_t pos = 0;
        std::int64_t lo = 0, hi = 0, sbar = 0;
        xi_[static_cast<std::size_t>(off_)] = 1;
        for (int k = 0; k < n_; ++k) {
            const std::int64_t prev = pos;
            pos += ((bits >> k) & 1) ? 1 : -1;
            const std::size_t slot = static_cast<std::size_t>(pos + off_);
            ++xi_[slot];
            if (pos > prev) {
                ++up_[slot];
            } else {
                ++down_[slot];
            }
            lo = std::min(lo, pos);
            hi = std::max(hi, pos);
            sbar = std::max(sbar, pos);
        }

        const std::int64_t value = compute(stat, lo, hi, sbar);

        for (std::int64_t x = lo; x <= hi; ++x) {
            const std::size_t slot = static_cast<std::size_t>(x + off_);
            xi_[slot] = 0;
            up_[slot] = 0;
            down_[slot] = 0;
        }
        return value;
    }

private:
    std::int64_t compute(Statistic stat, std::int64_t lo, std::int64_t hi,
                         std::int64_t sbar) const {
        switch (stat) {
            case Statistic::sbar:
                return sbar;
            case Statistic::card_K:
            case Statistic::xi_star: {
                std::int64_t best = 0, card = 0;
                for (std::int64_t x = lo; x <= hi; ++x) {
                    const std::int64_t v = xi_[static_cast<std::size_t>(x + off_)];
                    if (v > best) {
                        best = v;
                        card = 1;
                    } else if (v == best) {
                        ++card;
                    }
                }
                return stat == Statistic::xi_star ? best : card;
            }
            case Statistic::card_KD: {
                std::int64_t best = 0, card = 0;
                for (std::int64_t x = lo; x <= hi; ++x) {
                    const std::int64_t v = down_[static_cast<std::size_t>(x + off_)];
                    if (v > best) {
                        best = v;
                        card = 1;
                    } else if (v == best) {
                        ++card;
                    }
                }
                if (best == 0) {
                    return hi - lo + 1;  // degenerate: all visited sites
                }
                return card;
            }
            case Statistic::card_E:
            case Statistic::L_star:
            case Statistic::minabs_E:
            case Statistic::maxabs_E: {
                std::int64_t best = 0, card = 0;
                std::int64_t minabs = 0, maxabs = 0;
                for (std::int64_t x = lo; x <= hi + 1; ++x) {
                    const std::int64_t u =
                        (x >= lo && x <= hi) ? up_[static_cast<std::size_t>(x + off_)] : 0;
                    const std::int64_t dn =
                        (x - 1 >= lo) ? down_[static_cast<std::size_t>(x - 1 + off_)] : 0;
                    const std::int64_t v = u + dn;
                    if (v == 0) {
                        continue;
                    }
                    const std::int64_t a = std::abs(x);
                    if (v > best) {
                        best = v;
                        card = 1;
                        minabs = a;
                        maxabs = a;
                    } else if (v == best) {
                        ++card;
                        minabs = std::min(minabs, a);
                        maxabs = std::max(maxabs, a);
                    }
                }
                switch (stat) {
                    case Statistic::card_E: return card;
                    case Statistic::L_star: return best;
                    case Statistic::minabs_E: return minabs;
                    default: return maxabs;
                }
            }
            default:
                return 0;
        }
    }

    int n_;
    std::int64_t off_;
    std::vector<std::int64_t> xi_, up_, down_;
};

}  // namespace

ExactDistribution enumerate_paths(int n, Statistic statistic, unsigned workers) {
    if (n < 1 || n > kMaxEnumerationN) {
        throw std::invalid_argument("enumerate_paths: n out of range [1, 24]");
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    workers = std::max(1u, workers);
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, total));

    std::vector<std::map<std::int64_t, std::uint64_t>> partial(workers);
    auto run_block = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        PathStatEvaluator eval(n);
        auto& local = partial[w];
        for (std::uint64_t bits = begin; bits < end; ++bits) {
            ++local[eval.evaluate(bits, statistic)];
        }
    };

    if (workers == 1) {
        run_block(0, 0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = (w + 1 == workers) ? total : begin + chunk;
            pool.emplace_back(run_block, w, begin, end);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    ExactDistribution out;
    out.n = n;
    out.statistic = statistic;
    for (const auto& block : partial) {
        for (const auto& [value, count] : block) {
            out.counts[value] += count;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::optional<std::string> check_field_invariants(const CountField& field,
                                                  std::int64_t current_position) {
    const std::int64_t lo = field.lo();
    const std::int64_t hi = field.hi();
    const std::int64_t n = static_cast<std::int64_t>(field.n());

    std::int64_t xi_sum = 0;
    std::int64_t edge_sum = 0;
    for (std::int64_t x = lo; x <= hi; ++x) {
        const std::int64_t xi = field.site_count(x);
        const std::int64_t up = field.upcross_count(x);
        const std::int64_t down = field.downcross_count(x);
        if (xi < 0 || up < 0 || down < 0) {
            return "I5: negative count at x=" + std::to_string(x);
        }
        xi_sum += xi;
        if (xi != up + down + (x == 0 ? 1 : 0)) {
            return "I3: xi != up + down + [x=0] at x=" + std::to_string(x);
        }
    }
    for (std::int64_t x = lo; x <= hi + 1; ++x) {
        edge_sum += field.edge_count(x);
        const std::int64_t up = field.upcross_count(x);
        const std::int64_t down_below = field.downcross_count(x - 1);
        if (x >= 1) {
            const std::int64_t want = current_position >= x ? 1 : 0;
            if (up - down_below != want) {
                return "I4: alternation broken at edge x=" + std::to_string(x);
            }
        } else {
            const std::int64_t want = current_position <= x - 1 ? 1 : 0;
            if (down_below - up != want) {
                return "I4: alternation broken at edge x=" + std::to_string(x);
            }
        }
    }
    if (xi_sum != n + 1) {
        return "I1: sum xi = " + std::to_string(xi_sum) + ", want n+1 = " +
               std::to_string(n + 1);
    }
    if (edge_sum != n) {
        return "I2: sum L = " + std::to_string(edge_sum) + ", want n = " +
               std::to_string(n);
    }
    if (field.site_count(lo - 1) != 0 || field.site_count(hi + 1) != 0 ||
        field.upcross_count(lo - 1) != 0 || field.downcross_count(hi + 1) != 0) {
        return "I5: nonzero count outside visited range";
    }
    return std::nullopt;
}

namespace {

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

}  // namespace

std::optional<std::string> check_against_brute(const CountField& field,
                                               const FavoritesState& favs,
                                               const RecordedPath& path,
                                               std::uint64_t m) {
    const BruteField bf = brute_local_times(path, m);
    if (field.n() != bf.n) {
        return "n mismatch vs brute";
    }
    if (field.lo() != bf.lo || field.hi() != bf.hi) {
        return "visited range mismatch vs brute";
    }
    for (std::int64_t x = bf.lo - 1; x <= bf.hi + 1; ++x) {
        if (field.site_count(x) != bf.xi_at(x)) {
            return "xi mismatch at x=" + std::to_string(x);
        }
        if (field.upcross_count(x) != bf.up_at(x)) {
            return "up mismatch at x=" + std::to_string(x);
        }
        if (field.downcross_count(x) != bf.down_at(x)) {
            return "down mismatch at x=" + std::to_string(x);
        }
        if (field.edge_count(x) != bf.edge_at(x)) {
            return "L mismatch at x=" + std::to_string(x);
        }
    }

    const BruteFavorites bfav = brute_favorites(path, m);
    if (favs.favorite_sites() != bfav.sites) {
        return "favorite sites {" + join(favs.favorite_sites()) + "} != brute {" +
               join(bfav.sites) + "}";
    }
    if (m >= 1 && favs.favorite_edges() != bfav.edges) {
        return "favorite edges {" + join(favs.favorite_edges()) + "} != brute {" +
               join(bfav.edges) + "}";
    }
    if (favs.downcross_degenerate() != bfav.kd_degenerate) {
        return "downcross degeneracy flag mismatch";
    }
    if (favs.favorite_downcross() != bfav.downcross) {
        return "favorite downcross {" + join(favs.favorite_downcross()) +
               "} != brute {" + join(bfav.downcross) + "}";
    }
    if (favs.sites().max_value() != bfav.xi_star) {
        return "xi_star mismatch";
    }
    if (m >= 1 && favs.edges().max_value() != bfav.edge_star) {
        return "edge max mismatch";
    }
    return std::nullopt;
}

void VerifyReport::note_failure(std::uint64_t prefix, const std::string& what) {
    if (failures == 0) {
        first_failure = what;
        first_failure_prefix = prefix;
    }
    ++failures;
}

void VerifyReport::merge(const VerifyReport& other) {
    paths_checked += other.paths_checked;
    prefixes_checked += other.prefixes_checked;
    lemma_checks += other.lemma_checks;
    lemma_skipped_degenerate += other.lemma_skipped_degenerate;
    if (failures == 0 && other.failures > 0) {
        first_failure = other.first_failure;
        first_failure_prefix = other.first_failure_prefix;
    }
    failures += other.failures;
}

VerifyReport verify_path(const RecordedPath& path, const VerifyOptions& options) {
    VerifyReport report;
    report.paths_checked = 1;

    CountField field(CountField::capacity_for_steps(path.length()));
    FavoritesState favs;
    std::int64_t pos = 0;

    std::vector<std::uint64_t> times = options.check_times;
    std::sort(times.begin(), times.end());
    std::size_t ti = 0;

    const std::uint64_t len = path.length();
    for (std::uint64_t m = 1; m <= len; ++m) {
        const std::int64_t prev = pos;
        pos += path.steps[m - 1];
        favs.update_on_step(field.record_step(prev, pos));

        bool full_check = times.empty();
        if (!times.empty()) {
            while (ti < times.size() && times[ti] < m) {
                ++ti;
            }
            full_check = ti < times.size() && times[ti] == m;
        }

        if (options.check_lemma && (options.lemma_every_step || full_check)) {
            if (favs.downcross_degenerate()) {
                ++report.lemma_skipped_degenerate;
            } else {
                ++report.lemma_checks;
                if (!check_edge_downcross_lemma(favs)) {
                    report.note_failure(
                        m, "lemma: favorite edge without favorite downcrossing "
                           "site below it at n=" + std::to_string(m));
                }
            }
        }

        if (!full_check) {
            continue;
        }
        ++report.prefixes_checked;
        if (options.check_invariants) {
            if (auto err = check_field_invariants(field, pos)) {
                report.note_failure(m, *err + " at n=" + std::to_string(m));
            }
        }
        if (options.check_brute) {
            if (auto err = check_against_brute(field, favs, path, m)) {
                report.note_failure(m, *err + " at n=" + std::to_string(m));
            }
        }
    }
    return report;
}

VerifyReport exhaustive_verify(int n, const VerifyOptions& options,
                               unsigned workers) {
    if (n < 1 || n > kMaxEnumerationN) {
        throw std::invalid_argument("exhaustive_verify: n out of range [1, 24]");
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    workers = std::max(1u, workers);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

    std::vector<VerifyReport> partial(workers);
    auto run_block = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        RecordedPath path;
        path.steps.resize(static_cast<std::size_t>(n));
        for (std::uint64_t bits = begin; bits < end; ++bits) {
            for (int k = 0; k < n; ++k) {
                path.steps[static_cast<std::size_t>(k)] =
                    ((bits >> k) & 1) ? std::int8_t{1} : std::int8_t{-1};
            }
            partial[w].merge(verify_path(path, options));
        }
    };

    if (workers == 1) {
        run_block(0, 0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = total / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = (w + 1 == workers) ? total : begin + chunk;
            pool.emplace_back(run_block, w, begin, end);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    VerifyReport out;
    for (const auto& r : partial) {
        out.merge(r);
    }
    return out;
}

}  // namespace favwalk::oracle
