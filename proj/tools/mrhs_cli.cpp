// Command-line front end: generators, deficit reports, the gluing solver,
// and the Monte Carlo harness. File formats and CSV columns are documented
// in --help; every randomized path requires an explicit --seed.
#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrhs/constructions.hpp"
#include "mrhs/deficit.hpp"
#include "mrhs/equation.hpp"
#include "mrhs/graphcheck.hpp"
#include "mrhs/harness.hpp"
#include "mrhs/io.hpp"
#include "mrhs/rng.hpp"

namespace {

using namespace mrhs;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

VectorFamily family_of_matrices(const MrhsSystem& sys) {
    std::size_t t = 1;
    for (const MrhsEquation& e : sys.equations) t = std::max(t, e.t());
    VectorFamily fam{sys.n, sys.field, t, {}};
    for (const MrhsEquation& e : sys.equations) fam.sets.push_back(e.a);
    return fam;
}

std::vector<std::size_t> make_order(const MrhsSystem& sys, const std::string& strategy,
                                    std::uint64_t seed, bool seed_given, std::size_t cap) {
    std::size_t m = sys.m();
    if (strategy == "given") {
        std::vector<std::size_t> id(m);
        for (std::size_t i = 0; i < m; ++i) id[i] = i;
        return id;
    }
    if (strategy == "random") {
        if (!seed_given) throw Error("--order random requires --seed");
        return Rng(seed).permutation(m);
    }
    VectorFamily fam = family_of_matrices(sys);
    if (strategy == "greedy") return min_deficit_greedy(fam, GrowthMode::Rank).order;
    if (strategy == "exact") {
        if (m > cap)
            throw TooManySets("--order exact supports at most " + std::to_string(cap) +
                              " equations; use --order greedy for larger systems");
        return min_deficit_exact(fam, GrowthMode::Rank, cap).order;
    }
    throw Error("unknown order strategy '" + strategy + "'");
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

void print_summary(const std::string& kind, const VectorFamily& fam) {
    std::printf("gen %s n=%zu m=%zu t=%zu q=%u bound=%zu\n", kind.c_str(), fam.n, fam.m(), fam.t,
                fam.field.q(), fam.n - ceil_div(fam.n, fam.t));
}

int cmd_gen(const std::string& kind, std::size_t n, std::size_t m, std::size_t t, std::uint32_t q,
            bool q_given, std::size_t d, std::uint64_t seed, bool seed_given,
            const std::string& out, bool as_system) {
    VectorFamily fam{0, FieldSpec(2), 1, {}};
    if (kind == "vandermonde") {
        std::uint32_t qq = q_given ? q : smallest_prime_at_least(static_cast<std::uint32_t>(t * n));
        fam = vandermonde_family(n, t, qq);
    } else if (kind == "gv") {
        if (!seed_given) throw Error("gen gv requires --seed");
        GvResult res = gv_pair_family(n, d, seed);
        std::printf("gv d=%zu verified_up_to=%zu pair_bound=%zu\n", res.witness.d,
                    res.witness.verified_up_to, (d - 1) / 2);
        fam = std::move(res.family);
    } else if (kind == "matching") {
        if (!seed_given) throw Error("gen matching requires --seed");
        MatchingFamily mf = matching_family(n, seed);
        fam = std::move(mf.family);
    } else if (kind == "random") {
        if (!seed_given) throw Error("gen random requires --seed");
        fam = random_family(n, m, t, q, seed);
    } else {
        throw Error("unknown generator kind '" + kind + "'");
    }

    if (as_system) {
        if (!seed_given) throw Error("--system requires --seed for the RHS draws");
        SystemFromFamily sf = family_to_system(fam, Rng::substream(seed, 0x5157));
        for (const auto& r : sf.reduced)
            std::printf("set %zu reduced from %zu to %zu independent vectors\n", r[0], r[1], r[2]);
        io::save_text(out, io::serialize_system(sf.system));
    } else {
        io::save_text(out, io::serialize_family(fam));
    }
    print_summary(kind, fam);
    return 0;
}

int cmd_deficit(const std::string& file, const std::string& strategy, const std::string& mode_name,
                std::size_t cap, const std::string& csv) {
    std::string text = io::read_text(file);
    std::string kind = io::sniff_format(text);
    VectorFamily fam = kind == "MRHS" ? family_of_matrices(io::parse_system(text))
                                      : io::parse_family(text);
    GrowthMode mode = mode_name == "union" ? GrowthMode::Union : GrowthMode::Rank;

    DeficitReport rep{{}, {}, 0, 0};
    if (strategy == "exact") {
        if (fam.m() > cap)
            throw TooManySets("exact strategy supports at most " + std::to_string(cap) +
                              " sets (got " + std::to_string(fam.m()) +
                              "); use --strategy greedy");
        rep = min_deficit_exact(fam, mode, cap);
    } else if (strategy == "greedy") {
        rep = min_deficit_greedy(fam, mode);
    } else if (strategy == "brute") {
        rep = min_deficit_bruteforce(fam, mode);
    } else {
        throw Error("unknown strategy '" + strategy + "'");
    }

    std::printf("deficit file=%s strategy=%s mode=%s m=%zu\n", file.c_str(), strategy.c_str(),
                mode_name.c_str(), fam.m());
    std::printf("max_deficit=%lld argmax_k=%zu\n", static_cast<long long>(rep.max_deficit),
                rep.argmax_k);
    std::printf("order=%s\n", join_indices(rep.order).c_str());
    for (const ProfileEntry& p : rep.profile)
        std::printf("k=%zu growth=%zu deficit=%lld\n", p.k, p.growth,
                    static_cast<long long>(p.deficit));

    if (!csv.empty()) {
        std::string out = "k,growth,deficit\n";
        for (const ProfileEntry& p : rep.profile)
            out += std::to_string(p.k) + ',' + std::to_string(p.growth) + ',' +
                   std::to_string(p.deficit) + '\n';
        io::save_text(csv, out);
    }
    return 0;
}

int cmd_solve(const std::string& file, const std::string& strategy, std::uint64_t seed,
              bool seed_given, std::uint64_t cap, const std::string& verify,
              const std::string& csv) {
    MrhsSystem sys = io::load_system(file);
    std::vector<std::size_t> order = make_order(sys, strategy, seed, seed_given, kExactDeficitCap);

    SolveResult sr = solve_system(sys, order);
    double bound = predicted_cost_bound(sys, order);
    std::uint64_t cost = sr.trace.total_cost();

    std::printf("solve file=%s order=%s m=%zu n=%zu q=%u\n", file.c_str(), strategy.c_str(),
                sys.m(), sys.n, sys.field.q());
    std::printf("permutation=%s\n", join_indices(order).c_str());
    for (const GlueStep& g : sr.trace.steps)
        std::printf("step k=%zu rank=%zu left=%llu right=%llu out=%llu skipped=%d\n", g.step,
                    g.rank_after, static_cast<unsigned long long>(g.left),
                    static_cast<unsigned long long>(g.right),
                    static_cast<unsigned long long>(g.out), g.skipped ? 1 : 0);
    std::printf("total_cost=%llu predicted_bound=%s ratio=%s\n",
                static_cast<unsigned long long>(cost), io::format_double(bound).c_str(),
                io::format_double(bound > 0 ? static_cast<double>(cost) / bound : 0.0).c_str());

    std::uint64_t coset = 1;
    bool coset_ok = true;
    for (std::size_t i = sr.final.t(); i < sys.n; ++i) {
        if (coset > cap / sys.field.q()) {
            coset_ok = false;
            break;
        }
        coset *= sys.field.q();
    }
    if (!coset_ok) {
        std::printf("final_t=%zu final_s=%zu solutions=too-many-to-enumerate\n", sr.final.t(),
                    sr.final.s.size());
    } else {
        std::uint64_t count = sr.final.s.size() * coset;
        std::printf("solutions=%llu\n", static_cast<unsigned long long>(count));
        if (count > 0 && count <= 100) {
            for (const auto& x : extract_solutions(sr.final, cap)) {
                std::string line = "solution:";
                for (FieldElem v : x) line += ' ' + std::to_string(v);
                std::printf("%s\n", line.c_str());
            }
        }
    }

    if (verify == "brute") {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < sys.n; ++i) {
            if (total > cap / sys.field.q())
                throw EnumerationTooLarge("--verify brute: q^n exceeds cap");
            total *= sys.field.q();
        }
        const FieldSpec& f = sys.field;
        std::vector<FieldElem> x(sys.n, 0);
        std::vector<std::vector<FieldElem>> brute;
        for (std::uint64_t i = 0; i < total; ++i) {
            bool ok = true;
            for (const MrhsEquation& e : sys.equations) {
                std::vector<FieldElem> y = e.a.apply(x);
                if (!std::binary_search(e.s.begin(), e.s.end(), y)) {
                    ok = false;
                    break;
                }
            }
            if (ok) brute.push_back(x);
            for (std::size_t pos = sys.n; pos-- > 0;) {
                x[pos] = f.add(x[pos], 1);
                if (x[pos]) break;
            }
        }
        bool match = coset_ok && brute == extract_solutions(sr.final, cap);
        std::printf("verify=brute match=%s brute_count=%zu\n", match ? "yes" : "no", brute.size());
        if (!match) return 1;
    }

    if (!csv.empty()) {
        std::string out = "k,rank,left,right,out,skipped\n";
        for (const GlueStep& g : sr.trace.steps)
            out += std::to_string(g.step) + ',' + std::to_string(g.rank_after) + ',' +
                   std::to_string(g.left) + ',' + std::to_string(g.right) + ',' +
                   std::to_string(g.out) + ',' + (g.skipped ? "1" : "0") + '\n';
        io::save_text(csv, out);
    }
    return 0;
}

int cmd_simulate(const std::string& file, std::size_t trials, std::uint64_t seed,
                 const std::string& strategy, const std::string& csv) {
    MrhsSystem sys = io::load_system(file);
    std::vector<std::size_t> order =
        make_order(sys, strategy, Rng::substream(seed, 0x0D0E), true, kExactDeficitCap);
    SimulationResult res = run_simulation(sys, order, trials, seed);

    std::printf("simulate file=%s trials=%zu seed=%llu order=%s\n", file.c_str(), trials,
                static_cast<unsigned long long>(seed), strategy.c_str());
    std::printf("permutation=%s\n", join_indices(order).c_str());
    for (const StepStat& s : res.steps)
        std::printf("step k=%zu rank=%zu mean_out=%s predicted=%s ratio=%s\n", s.k, s.r_k,
                    io::format_double(s.mean_out).c_str(), io::format_double(s.predicted).c_str(),
                    io::format_double(s.ratio).c_str());
    std::printf("mean_cost=%s bound=%s cost_ratio=%s max_step_ratio=%s\n",
                io::format_double(res.mean_cost).c_str(), io::format_double(res.bound).c_str(),
                io::format_double(res.cost_ratio).c_str(),
                io::format_double(res.max_step_ratio).c_str());

    if (!csv.empty()) io::save_text(csv, simulation_csv(res));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "MRHS linear systems over prime fields: generators, ordering deficit reports,\n"
        "the gluing solver, and a seeded Monte Carlo harness.\n\n"
        "File formats ('#' starts a comment line):\n"
        "  system: 'MRHS 1', 'q <int>', 'n <int>', 'm <int>', then per equation\n"
        "          'eq <t> <s>' followed by t matrix rows (n entries) and s RHS rows\n"
        "          (t entries).\n"
        "  family: 'FAM 1', 'q', 'n', 'm', 't', then per set 'set <size>' followed\n"
        "          by <size> vectors of n entries.\n\n"
        "All randomness derives from --seed via splitmix64; substream k of seed s is\n"
        "seeded with splitmix64(s ^ (k+1)*0x9E3779B97F4A7C15), so equal invocations\n"
        "give byte-identical outputs."};
    app.require_subcommand(1);

    // gen
    std::string kind, out;
    std::size_t n = 0, m = 1, t = 2, d = 3;
    std::uint32_t q = 2;
    std::uint64_t seed = 0;
    bool as_system = false;
    CLI::App* gen = app.add_subcommand("gen", "generate a family or system file");
    gen->add_option("kind", kind, "vandermonde | gv | matching | random")->required();
    gen->add_option("--n", n, "base size parameter")->required();
    gen->add_option("--t", t, "vectors per set (vandermonde, random)");
    auto* opt_q = gen->add_option("--q", q, "field size (default: smallest prime >= t*n for "
                                            "vandermonde, 2 otherwise)");
    gen->add_option("--m", m, "number of sets (random)");
    gen->add_option("--d", d, "independence target: any d-1 rows independent (gv)");
    auto* opt_seed_g = gen->add_option("--seed", seed, "64-bit seed");
    gen->add_flag("--system", as_system,
                  "draw RHS sets (inclusion probability 1/q) and write a system file");
    gen->add_option("--out", out, "output path")->required();

    // deficit
    std::string file, strategy = "exact", mode_name = "rank", csv;
    std::size_t cap = mrhs::kExactDeficitCap;
    CLI::App* def = app.add_subcommand("deficit", "ordering deficit report for a family "
                                                  "(or the matrices of a system)");
    def->add_option("file", file, "family or system file")->required();
    def->add_option("--strategy", strategy, "exact | greedy | brute (default exact)");
    def->add_option("--mode", mode_name, "rank | union (default rank)");
    def->add_option("--cap", cap, "subset-DP size cap for exact (default 22)");
    def->add_option("--csv", csv, "write the k,growth,deficit profile as CSV");

    // solve
    std::string sfile, sorder = "given", verify, scsv;
    std::uint64_t ssev = 0, scap = mrhs::kDefaultEnumCap;
    CLI::App* sol = app.add_subcommand("solve", "glue all equations and report solutions");
    sol->add_option("file", sfile, "system file")->required();
    sol->add_option("--order", sorder, "given | greedy | exact | random (default given)");
    auto* opt_seed_s = sol->add_option("--seed", ssev, "seed for --order random");
    sol->add_option("--cap", scap, "enumeration cap (default 2^22)");
    sol->add_option("--verify", verify, "'brute': check solutions against full enumeration");
    sol->add_option("--csv", scsv, "write the per-step trace as CSV");

    // simulate
    std::string mfile, morder = "given", mcsv;
    std::size_t trials = 0;
    std::uint64_t mseed = 0;
    CLI::App* sim = app.add_subcommand(
        "simulate", "fix the matrices, redraw every RHS per trial, compare measured\n"
                    "costs and RHS counts with the q^(r_k - k) predictions.\n"
                    "CSV columns: trial,cost,max_rank_deficit,predicted_bound,ratio,"
                    "final_s,solutions; the last row is 'summary' with column means.");
    sim->add_option("file", mfile, "system file")->required();
    sim->add_option("--trials", trials, "number of trials")->required()->check(CLI::PositiveNumber);
    sim->add_option("--seed", mseed, "64-bit seed")->required();
    sim->add_option("--order", morder, "given | greedy | exact | random (default given)");
    sim->add_option("--csv", mcsv, "write per-trial rows plus a summary row");

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return cmd_gen(kind, n, m, t, q, opt_q->count() > 0, d, seed, opt_seed_g->count() > 0,
                           out, as_system);
        if (def->parsed()) return cmd_deficit(file, strategy, mode_name, cap, csv);
        if (sol->parsed())
            return cmd_solve(sfile, sorder, ssev, opt_seed_s->count() > 0, scap, verify, scsv);
        if (sim->parsed()) return cmd_simulate(mfile, trials, mseed, morder, mcsv);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mrhs::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
