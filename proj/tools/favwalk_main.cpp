// favwalk — favorite-site/edge laboratory for the simple symmetric random
// walk. Subcommands: simulate, sweep, enumerate, verify, invlt.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 invariant failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "favwalk/oracle.hpp"
#include "favwalk/rng.hpp"
#include "favwalk/runner.hpp"

namespace fs = std::filesystem;
using namespace favwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(std::stod(item));
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(std::stoull(item));
        }
    }
    return out;
}

int write_file(const fs::path& dir, const std::string& name,
               const std::function<void(std::ostream&)>& body) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir << ": "
                  << ec.message() << "\n";
        return kExitIo;
    }
    const fs::path file = dir / name;
    std::ofstream os(file, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open " << file << " for writing\n";
        return kExitIo;
    }
    body(os);
    os.flush();
    if (!os) {
        std::cerr << "error: write failed for " << file << "\n";
        return kExitIo;
    }
    std::cout << "wrote " << file.string() << "\n";
    return kExitOk;
}

struct CommonFlags {
    std::uint64_t seed = 1;
    std::uint32_t replicas = 1;
    std::uint64_t steps = 1'000'000;
    std::string schedule = "geometric:2";
    std::string gammas = "0.5,1.0,2.0";
    std::string thresholds;
    unsigned workers = 1;
    std::string out_dir = "out";
    bool record_path = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_replicas) {
    cmd->add_option("--seed", f.seed, "Base seed (stream id = replica index)");
    if (with_replicas) {
        cmd->add_option("--replicas", f.replicas, "Number of replicas");
    }
    cmd->add_option("--steps", f.steps, "Steps per replica");
    cmd->add_option("--schedule", f.schedule,
                    "Checkpoint grid: geometric:C, exppow:P or superexp");
    cmd->add_option("--gammas", f.gammas, "Comma list of gamma exponents");
    cmd->add_option("--workers", f.workers, "Worker threads");
    cmd->add_option("--out", f.out_dir, "Output directory");
}

RunConfig to_config(const CommonFlags& f) {
    RunConfig cfg;
    cfg.base_seed = f.seed;
    cfg.replicas = f.replicas;
    cfg.steps = f.steps;
    cfg.schedule = parse_schedule(f.schedule, f.steps);
    cfg.gammas = parse_double_list(f.gammas);
    if (!f.thresholds.empty()) {
        cfg.thresholds = parse_u64_list(f.thresholds);
    }
    cfg.workers = f.workers;
    cfg.out_dir = f.out_dir;
    cfg.record_path = f.record_path;
    cfg.validate();
    return cfg;
}

// Cross-checks every checkpoint row against a brute-force recomputation
// from the recorded path.
int oracle_check(const ReplicaResult& res) {
    if (!res.path) {
        return kExitOk;
    }
    for (const auto& rec : res.records) {
        const auto brute = oracle::brute_favorites(*res.path, rec.n);
        const auto [mnE, mxE] = extremal_abs(brute.edges);
        if (rec.xi_star != brute.xi_star || rec.L_star != brute.edge_star ||
            rec.card_K != static_cast<std::int64_t>(brute.sites.size()) ||
            rec.card_E != static_cast<std::int64_t>(brute.edges.size()) ||
            rec.minabs_E != mnE || rec.maxabs_E != mxE) {
            std::cerr << "oracle mismatch at checkpoint n=" << rec.n
                      << " (replica " << res.replica << ")\n";
            return kExitInvariant;
        }
    }
    std::cout << "oracle cross-check passed for replica " << res.replica
              << " (" << res.records.size() << " checkpoints)\n";
    return kExitOk;
}

int cmd_simulate(const CommonFlags& flags) {
    RunConfig cfg = to_config(flags);
    cfg.replicas = 1;
    const ReplicaResult res = run_replica(cfg, 0);
    if (int rc = oracle_check(res); rc != kExitOk) {
        return rc;
    }
    std::vector<ReplicaResult> all;
    all.push_back(res);
    return write_file(cfg.out_dir, "checkpoints.csv", [&](std::ostream& os) {
        write_checkpoint_csv(os, all, cfg.gammas);
    });
}

int cmd_sweep(const CommonFlags& flags) {
    RunConfig cfg = to_config(flags);
    if (cfg.replicas < 2) {
        std::cerr << "error: sweep needs --replicas >= 2\n";
        return kExitUsage;
    }
    const std::vector<ReplicaResult> results = run_sweep(cfg);
    if (cfg.record_path) {
        for (const auto& res : results) {
            if (int rc = oracle_check(res); rc != kExitOk) {
                return rc;
            }
        }
    }
    int rc = write_file(cfg.out_dir, "aggregate.csv", [&](std::ostream& os) {
        write_checkpoint_csv(os, results, cfg.gammas);
    });
    if (rc != kExitOk) {
        return rc;
    }
    rc = write_file(cfg.out_dir, "summary.csv", [&](std::ostream& os) {
        write_summary_csv(os, results, cfg.gammas);
    });
    if (rc != kExitOk) {
        return rc;
    }
    return write_file(cfg.out_dir, "cardinality.csv", [&](std::ostream& os) {
        write_cardinality_csv(os, results);
    });
}

int cmd_enumerate(int n, const std::string& statistic, const std::string& out_dir,
                  unsigned workers) {
    const auto stat = oracle::statistic_from_name(statistic);
    if (!stat) {
        std::cerr << "error: unknown statistic '" << statistic << "'\n";
        return kExitUsage;
    }
    oracle::ExactDistribution dist;
    try {
        dist = oracle::enumerate_paths(n, *stat, workers);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << "E[" << statistic << "(" << n << ")] = "
              << dist.expectation_numerator() << " / " << dist.total_paths()
              << " = " << format_double(dist.expectation()) << "\n";
    return write_file(out_dir, "distribution.csv", [&](std::ostream& os) {
        os << "value,count,probability\n";
        for (const auto& [value, count] : dist.counts) {
            os << value << ',' << count << ','
               << format_double(static_cast<double>(count) /
                                static_cast<double>(dist.total_paths()))
               << "\n";
        }
    });
}

int cmd_verify(int n_exhaustive, std::uint64_t n_random,
               std::uint64_t len_random, std::uint64_t seed,
               std::uint64_t check_times, unsigned workers) {
    oracle::VerifyReport total;

    if (n_exhaustive > 0) {
        oracle::VerifyOptions opts;  // every prefix, all checks
        const auto rep = oracle::exhaustive_verify(n_exhaustive, opts, workers);
        std::cout << "exhaustive n=" << n_exhaustive << ": " << rep.paths_checked
                  << " paths, " << rep.prefixes_checked << " prefixes, "
                  << rep.lemma_checks << " lemma checks, " << rep.failures
                  << " failures\n";
        total.merge(rep);
    }

    if (n_random > 0) {
        // Per path: invariants and the lemma at `check_times` sampled times,
        // with the much slower brute-force equality at up to 50 of them.
        std::vector<oracle::VerifyReport> reports(n_random);
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (std::uint64_t i = next.fetch_add(1); i < n_random;
                 i = next.fetch_add(1)) {
                StepStream stream(Seed{seed, static_cast<std::uint32_t>(i)});
                RecordedPath path;
                path.steps.reserve(len_random);
                for (std::uint64_t k = 0; k < len_random; ++k) {
                    path.steps.push_back(
                        static_cast<std::int8_t>(stream.next_step()));
                }
                const std::uint64_t n_checks = std::min(check_times, len_random);
                oracle::VerifyOptions invariant_opts;
                invariant_opts.check_brute = false;
                for (std::uint64_t k = 0; k < n_checks; ++k) {
                    invariant_opts.check_times.push_back(
                        stream.next_word() % len_random + 1);
                }
                oracle::VerifyOptions brute_opts;
                brute_opts.check_invariants = false;
                brute_opts.check_lemma = false;
                for (std::uint64_t k = 0; k < std::min<std::uint64_t>(n_checks, 50);
                     ++k) {
                    brute_opts.check_times.push_back(
                        invariant_opts.check_times[k]);
                }
                reports[i] = oracle::verify_path(path, invariant_opts);
                reports[i].merge(oracle::verify_path(path, brute_opts));
                reports[i].paths_checked = 1;
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::max(1u, workers); ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& rep : reports) {
            total.merge(rep);
        }
        std::cout << "random paths: " << n_random << " x " << len_random
                  << " steps\n";
    }

    std::cout << "total: " << total.paths_checked << " paths, "
              << total.prefixes_checked << " full prefix checks, "
              << total.lemma_checks << " lemma checks ("
              << total.lemma_skipped_degenerate << " degenerate skipped), "
              << total.failures << " failures\n";
    if (!total.ok()) {
        std::cerr << "FIRST FAILURE at prefix " << total.first_failure_prefix
                  << ": " << total.first_failure << "\n";
        return kExitInvariant;
    }
    std::cout << "all invariants hold\n";
    return kExitOk;
}

int cmd_invlt(const CommonFlags& flags) {
    RunConfig cfg = to_config(flags);
    if (cfg.thresholds.empty()) {
        std::cerr << "error: invlt needs --thresholds\n";
        return kExitUsage;
    }
    const auto results = run_invlt(cfg);
    return write_file(cfg.out_dir, "invlt.csv", [&](std::ostream& os) {
        write_invlt_csv(os, results);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"favorite-site/edge laboratory for simple random walk"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Run one replica, write checkpoints.csv");
    add_common_flags(sim, sim_flags, false);
    sim->add_flag("--record-path", sim_flags.record_path,
                  "Keep the step sequence and cross-check checkpoints against "
                  "the brute-force oracle");

    CommonFlags sweep_flags;
    sweep_flags.replicas = 8;
    auto* sweep = app.add_subcommand(
        "sweep", "Run replicas in parallel, write aggregate/summary/cardinality CSVs");
    add_common_flags(sweep, sweep_flags, true);
    sweep->add_flag("--record-path", sweep_flags.record_path,
                    "Keep step sequences and cross-check every replica");

    int enum_n = 2;
    std::string enum_stat = "card_K";
    std::string enum_out = "out";
    unsigned enum_workers = 1;
    auto* enumerate = app.add_subcommand(
        "enumerate", "Exact law of a statistic over all 2^n paths");
    enumerate->add_option("n", enum_n, "Path length (<= 24)")->required();
    enumerate->add_option("statistic", enum_stat,
                          "card_K card_E card_KD xi_star L_star minabs_E "
                          "maxabs_E sbar")
        ->required();
    enumerate->add_option("--out", enum_out, "Output directory");
    enumerate->add_option("--workers", enum_workers, "Worker threads");

    int ver_n = 12;
    std::uint64_t ver_random = 100, ver_len = 100'000, ver_seed = 7;
    std::uint64_t ver_times = 1'000;
    unsigned ver_workers = 1;
    auto* verify = app.add_subcommand(
        "verify", "Invariant suite: exhaustive small paths plus random long paths");
    verify->add_option("n_exhaustive", ver_n, "Exhaustive path length (0 = skip)");
    verify->add_option("n_random", ver_random, "Number of random paths");
    verify->add_option("len_random", ver_len, "Random path length");
    verify->add_option("seed", ver_seed, "Seed for random paths");
    verify->add_option("--check-times", ver_times,
                       "Full-check count per random path");
    verify->add_option("--workers", ver_workers, "Worker threads");

    CommonFlags invlt_flags;
    auto* invlt = app.add_subcommand(
        "invlt", "Inverse local time: first n with xi(0,n) > r per threshold");
    add_common_flags(invlt, invlt_flags, true);
    invlt->add_option("--thresholds", invlt_flags.thresholds,
                      "Comma list of strictly increasing thresholds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            return cmd_simulate(sim_flags);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_flags);
        }
        if (enumerate->parsed()) {
            return cmd_enumerate(enum_n, enum_stat, enum_out, enum_workers);
        }
        if (verify->parsed()) {
            return cmd_verify(ver_n, ver_random, ver_len, ver_seed, ver_times,
                              ver_workers);
        }
        if (invlt->parsed()) {
            return cmd_invlt(invlt_flags);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
