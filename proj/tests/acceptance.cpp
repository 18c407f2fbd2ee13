// End-to-end acceptance suite. Runs every criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion; exit status is the number of
// failures. argv[1] must point at the CLI binary (used by the determinism
// criterion).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "mrhs/constructions.hpp"
#include "mrhs/deficit.hpp"
#include "mrhs/equation.hpp"
#include "mrhs/graphcheck.hpp"
#include "mrhs/harness.hpp"
#include "mrhs/io.hpp"
#include "mrhs/rng.hpp"
#include "oracle.hpp"

using namespace mrhs;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion-%d %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) { return io::format_double(v); }

// ---- 1: glued solutions equal brute-force enumeration -------------------

void criterion1() {
    Timer timer;
    Rng rng(101);
    std::size_t checked = 0;
    bool ok = true;
    std::string detail;
    auto run_batch = [&](int count, std::uint32_t q, std::size_t n_lo, std::size_t n_hi) {
        for (int i = 0; i < count && ok; ++i) {
            std::size_t n = n_lo + rng.below(n_hi - n_lo + 1);
            std::size_t m = 2 + rng.below(5);
            std::size_t t = 1 + rng.below(3);
            MrhsSystem sys =
                family_to_system(random_family(n, m, t, q, rng.next()), rng.next()).system;
            auto expect = oracle::brute_solutions(sys);
            for (int o = 0; o < 3 && ok; ++o) {
                SolveResult r = solve_system(sys, rng.permutation(m));
                if (extract_solutions(r.final) != expect) {
                    ok = false;
                    detail = "mismatch at q=" + std::to_string(q) + " instance " +
                             std::to_string(i);
                }
            }
            ++checked;
        }
    };
    run_batch(200, 2, 4, 10);
    run_batch(20, 3, 3, 6);
    double el = timer.seconds();
    if (ok && el >= 60.0) {
        ok = false;
        detail = "runtime " + fmt(el) + "s exceeds 60s";
    }
    if (ok) detail = std::to_string(checked) + " systems x 3 orders, exact, " + fmt(el) + "s";
    report(1, "gluing-equals-bruteforce", ok, detail);
}

// ---- 2: Vandermonde families attain n - ceil(n/t) ------------------------

void criterion2() {
    Timer timer;
    bool ok = true;
    std::string detail;
    const std::pair<std::size_t, std::size_t> cases[] = {{4, 2}, {6, 2}, {6, 3}, {8, 2}, {9, 3}};
    for (auto [n, t] : cases) {
        std::uint32_t q = smallest_prime_at_least(static_cast<std::uint32_t>(t * n));
        std::int64_t want = static_cast<std::int64_t>(n) - static_cast<std::int64_t>((n + t - 1) / t);
        std::int64_t got =
            min_deficit_exact(vandermonde_family(n, t, q), GrowthMode::Rank).max_deficit;
        if (got != want) {
            ok = false;
            detail = "n=" + std::to_string(n) + " t=" + std::to_string(t) + ": got " +
                     std::to_string(got) + ", want " + std::to_string(want);
            break;
        }
    }
    double el = timer.seconds();
    if (ok && el >= 30.0) {
        ok = false;
        detail = "runtime " + fmt(el) + "s exceeds 30s";
    }
    if (ok) detail = "5 (n,t) pairs exact, " + fmt(el) + "s";
    report(2, "vandermonde-attainment", ok, detail);
}

// ---- 3: universal upper bound on 1000 random m = n families --------------

void criterion3() {
    Timer timer;
    Rng rng(303);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 1000 && ok; ++i) {
        std::size_t n = 6 + rng.below(7);  // 6..12
        std::size_t t = 2 + rng.below(2);
        std::uint32_t q = rng.one_in(2) ? 2u : 3u;
        VectorFamily fam = random_family(n, n, t, q, rng.next());
        std::int64_t bound =
            static_cast<std::int64_t>(n) - static_cast<std::int64_t>((n + t - 1) / t);
        std::int64_t got = min_deficit_exact(fam, GrowthMode::Rank).max_deficit;
        if (got > bound) {
            ok = false;
            detail = "family " + std::to_string(i) + " (n=" + std::to_string(n) +
                     ", t=" + std::to_string(t) + ", q=" + std::to_string(q) + "): deficit " +
                     std::to_string(got) + " > bound " + std::to_string(bound);
        }
    }
    double el = timer.seconds();
    if (ok && el >= 300.0) {
        ok = false;
        detail = "runtime " + fmt(el) + "s exceeds 300s";
    }
    if (ok) detail = "1000 families within n - ceil(n/t), " + fmt(el) + "s";
    report(3, "universal-upper-bound", ok, detail);
}

// ---- 4: subset DP equals permutation brute force --------------------------

void criterion4() {
    Rng rng(404);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 300 && ok; ++i) {
        std::size_t m = 1 + rng.below(7);
        std::size_t n = 2 + rng.below(7);
        std::size_t t = 1 + rng.below(3);
        std::uint32_t q = rng.one_in(2) ? 2u : 3u;
        VectorFamily fam = random_family(n, m, t, q, rng.next());
        for (GrowthMode mode : {GrowthMode::Rank, GrowthMode::Union}) {
            std::int64_t ex = min_deficit_exact(fam, mode).max_deficit;
            std::int64_t bf = min_deficit_bruteforce(fam, mode).max_deficit;
            if (ex != bf) {
                ok = false;
                detail = "family " + std::to_string(i) + " mode " +
                         (mode == GrowthMode::Rank ? "rank" : "union") + ": DP " +
                         std::to_string(ex) + " != brute " + std::to_string(bf);
            }
        }
    }
    if (ok) detail = "300 families, both growth modes, exact";
    report(4, "dp-vs-bruteforce", ok, detail);
}

// ---- 5: RHS inclusion model ------------------------------------------------

void criterion5() {
    FieldSpec f2(2);
    Mat a = Mat::identity(f2, 3);
    const int trials = 10000;
    const Rhs probes[3] = {{0, 0, 0}, {1, 0, 1}, {1, 1, 1}};
    int hits[3] = {0, 0, 0};
    double size_sum = 0;
    for (int i = 0; i < trials; ++i) {
        auto s = random_rhs(a, Rng::substream(505, i));
        size_sum += static_cast<double>(s.size());
        for (int p = 0; p < 3; ++p)
            if (std::binary_search(s.begin(), s.end(), probes[p])) ++hits[p];
    }
    double sigma = std::sqrt(0.25 / trials);
    bool ok = true;
    std::string detail;
    for (int p = 0; p < 3; ++p) {
        double freq = hits[p] / double(trials);
        if (std::abs(freq - 0.5) > 3 * sigma) {
            ok = false;
            detail = "probe " + std::to_string(p) + " frequency " + fmt(freq) +
                     " outside 0.5 +- " + fmt(3 * sigma);
        }
    }
    double mean = size_sum / trials;
    if (std::abs(mean - 4.0) > 0.2) {
        ok = false;
        detail = "mean |S| " + fmt(mean) + " outside 4 +- 0.2";
    }
    if (ok)
        detail = "freqs " + fmt(hits[0] / 1e4) + "/" + fmt(hits[1] / 1e4) + "/" +
                 fmt(hits[2] / 1e4) + " vs 0.5 +- " + fmt(3 * sigma) + ", mean|S| " + fmt(mean);
    report(5, "rhs-inclusion-model", ok, detail);
}

// ---- 6: glued RHS size product law ----------------------------------------

void criterion6() {
    Timer timer;
    FieldSpec f2(2);
    Mat a1 = Mat::from_rows(f2, 5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}});
    Mat a2 = Mat::from_rows(f2, 5, {{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {1, 1, 0, 0, 0}});
    const int trials = 10000;
    double sum = 0;
    for (int i = 0; i < trials; ++i) {
        std::uint64_t s = Rng::substream(606, i);
        MrhsEquation e1 = make_equation(a1, random_rhs(a1, Rng::substream(s, 0)));
        MrhsEquation e2 = make_equation(a2, random_rhs(a2, Rng::substream(s, 1)));
        sum += static_cast<double>(glue(e1, e2).s.size());
    }
    double mean = sum / trials;
    double el = timer.seconds();
    bool ok = std::abs(mean - 8.0) <= 0.4 && el < 60.0;
    report(6, "glued-size-product-law", ok,
           "mean |S| " + fmt(mean) + " vs 8 +- 0.4, " + fmt(el) + "s");
}

// ---- 7: per-step prediction and stable cost constant -----------------------

void criterion7() {
    const std::uint64_t fam_seeds[3] = {2, 6, 9};
    bool ok = true;
    std::string detail;
    double ratios[3] = {0, 0, 0};
    for (int sysi = 0; sysi < 3 && ok; ++sysi) {
        VectorFamily fam = random_family(10, 5, 3, 2, fam_seeds[sysi]);
        SystemFromFamily sf = family_to_system(fam, 1000 + fam_seeds[sysi]);
        std::vector<std::size_t> order{0, 1, 2, 3, 4};
        SimulationResult res = run_simulation(sf.system, order, 10000, 42 + sysi);
        for (const StepStat& s : res.steps) {
            if (s.predicted < 4.0) continue;
            if (std::abs(s.mean_out / s.predicted - 1.0) > 0.10) {
                ok = false;
                detail = "system " + std::to_string(sysi) + " step k=" + std::to_string(s.k) +
                         ": mean " + fmt(s.mean_out) + " vs predicted " + fmt(s.predicted);
            }
        }
        ratios[sysi] = res.cost_ratio;
    }
    if (ok) {
        double avg = (ratios[0] + ratios[1] + ratios[2]) / 3.0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(ratios[i] - avg) > 0.25 * avg) {
                ok = false;
                detail = "cost ratio " + fmt(ratios[i]) + " deviates more than 25% from mean " +
                         fmt(avg);
            }
        if (ok)
            detail = "steps within 10%; cost/bound constants " + fmt(ratios[0]) + ", " +
                     fmt(ratios[1]) + ", " + fmt(ratios[2]) + " (stable within 25%)";
    }
    report(7, "per-step-prediction", ok, detail);
}

// ---- 8: greedy pair construction -------------------------------------------

void criterion8() {
    Timer timer;
    bool ok = true;
    std::string detail;
    try {
        GvResult res = gv_pair_family(12, 5, 1);
        if (res.witness.verified_up_to != 4 || !all_small_subsets_independent(res.witness.rows, 4)) {
            ok = false;
            detail = "independence verification failed";
        } else {
            std::int64_t def = min_deficit_exact(res.family, GrowthMode::Rank).max_deficit;
            if (def < 2) {
                ok = false;
                detail = "deficit " + std::to_string(def) + " below 2";
            } else {
                detail = "all row subsets of size <= 4 independent, deficit " +
                         std::to_string(def) + " >= 2";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double el = timer.seconds();
    if (ok && el >= 300.0) {
        ok = false;
        detail = "runtime " + fmt(el) + "s exceeds 300s";
    } else if (ok) {
        detail += ", " + fmt(el) + "s";
    }
    report(8, "gv-pair-construction", ok, detail);
}

// ---- 9: graph rank oracle ----------------------------------------------------

void criterion9() {
    Rng rng(909);
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 1000 && ok; ++i) {
        std::size_t n = 1 + rng.below(8);
        MatchingFamily mf = matching_family(n, rng.next());
        auto all = rng.permutation(3 * n);
        std::size_t len = 1 + rng.below(3 * n);
        std::vector<std::size_t> prefix(all.begin(), all.begin() + len);
        RankAccumulator acc(mf.family.field, 3 * n);
        for (std::size_t k : prefix) {
            const Mat& s = mf.family.sets[k];
            for (std::size_t r = 0; r < s.rows(); ++r) acc.add_row(s, r);
        }
        if (prefix_rank_via_graph(mf, prefix) != acc.rank()) {
            ok = false;
            detail = "instance " + std::to_string(i) + " (n=" + std::to_string(n) + ")";
        }
    }
    if (ok) detail = "1000 random (family, prefix) pairs, exact";
    report(9, "graph-rank-oracle", ok, detail);
}

// ---- 10: byte-identical reruns of every seeded command -----------------------

int run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file) {
    std::string cmd = cli + " " + args + " > " + stdout_file.string() + " 2>&1";
    return std::system(cmd.c_str());
}

void criterion10(const std::string& cli) {
    if (cli.empty()) {
        report(10, "cli-determinism", false, "no CLI path given (pass it as argv[1])");
        return;
    }
    fs::path dir = fs::path("acceptance_tmp");
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);

    // every seeded command, rerun verbatim so the invocations are identical
    struct Cmd {
        std::string args;                   // with {DIR} placeholder
        std::vector<std::string> produces;  // files relative to the run dir
    };
    const std::vector<Cmd> cmds = {
        {"gen vandermonde --n 4 --t 2 --out {DIR}/v.fam", {"v.fam"}},
        {"gen gv --n 10 --d 4 --seed 5 --out {DIR}/g.fam", {"g.fam"}},
        {"gen matching --n 5 --seed 7 --out {DIR}/m.fam", {"m.fam"}},
        {"gen random --n 6 --m 4 --t 3 --q 3 --seed 9 --out {DIR}/r.fam", {"r.fam"}},
        {"gen random --n 8 --m 4 --t 3 --q 2 --seed 11 --system --out {DIR}/r.mrhs", {"r.mrhs"}},
        {"deficit {DIR}/r.fam --strategy exact --csv {DIR}/d.csv", {"d.csv"}},
        {"deficit {DIR}/r.fam --strategy greedy --mode union", {}},
        {"solve {DIR}/r.mrhs --order exact --verify brute --csv {DIR}/t.csv", {"t.csv"}},
        {"solve {DIR}/r.mrhs --order random --seed 21", {}},
        {"simulate {DIR}/r.mrhs --trials 200 --seed 3 --order greedy --csv {DIR}/s.csv",
         {"s.csv"}},
    };

    bool ok = true;
    std::string detail;
    for (std::size_t c = 0; c < cmds.size() && ok; ++c) {
        std::string args = cmds[c].args;
        for (std::size_t pos; (pos = args.find("{DIR}")) != std::string::npos;)
            args.replace(pos, 5, dir.string());

        fs::path cap1 = dir / ("stdout" + std::to_string(c) + ".first.txt");
        fs::path cap2 = dir / ("stdout" + std::to_string(c) + ".second.txt");
        int rc1 = run_cli(cli, args, cap1);
        std::vector<std::string> snapshot;
        for (const std::string& rel : cmds[c].produces)
            snapshot.push_back(io::read_text((dir / rel).string()));
        int rc2 = run_cli(cli, args, cap2);
        if (rc1 != 0 || rc2 != 0) {
            ok = false;
            detail = "command '" + cmds[c].args + "' exited " + std::to_string(rc1) + "/" +
                     std::to_string(rc2);
            break;
        }
        if (io::read_text(cap1.string()) != io::read_text(cap2.string())) {
            ok = false;
            detail = "stdout of '" + cmds[c].args + "' differs between runs";
        }
        for (std::size_t p = 0; p < cmds[c].produces.size() && ok; ++p)
            if (io::read_text((dir / cmds[c].produces[p]).string()) != snapshot[p]) {
                ok = false;
                detail = cmds[c].produces[p] + " differs between runs of '" + cmds[c].args + "'";
            }
    }

    // exit-code contract: validation failures return 2
    if (ok) {
        int rc = run_cli(cli, "deficit " + (dir / "missing.fam").string(), dir / "err.txt");
        int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        if (code != 2) {
            ok = false;
            detail = "validation error exited " + std::to_string(code) + ", want 2";
        }
    }
    // the exact strategy must refuse oversized instances with guidance
    if (ok) {
        run_cli(cli, "gen random --n 4 --m 23 --t 2 --q 2 --seed 1 --out " +
                         (dir / "big.fam").string(),
                dir / "err.txt");
        int rc = run_cli(cli, "deficit " + (dir / "big.fam").string() + " --strategy exact",
                         dir / "err.txt");
        int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        std::string msg = io::read_text((dir / "err.txt").string());
        if (code != 2 || msg.find("greedy") == std::string::npos) {
            ok = false;
            detail = "oversized exact request: exit " + std::to_string(code) +
                     ", guidance present: " + (msg.find("greedy") != std::string::npos ? "yes" : "no");
        }
    }
    if (ok) detail = std::to_string(cmds.size()) + " seeded commands byte-identical across reruns";
    report(10, "cli-determinism", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
        criterion10(cli);
    } catch (const std::exception& e) {
        std::printf("FAIL unexpected exception: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "RESULT", failures);
    return failures == 0 ? 0 : 1;
}
