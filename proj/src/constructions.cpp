#include "mrhs/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrhs/rng.hpp"

namespace mrhs {

namespace {

using boost::multiprecision::cpp_int;

std::string words_key(const std::vector<std::uint64_t>& w) {
    return std::string(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(std::uint64_t));
}

// sum_{i=1}^{hi} C(n_over-1 ... ) helpers
cpp_int binom_sum(std::size_t n, std::size_t lo, std::size_t hi) {
    // C(n, i) via the multiplicative recurrence, summed for i in [lo, hi]
    cpp_int c = 1, sum = 0;
    for (std::size_t i = 1; i <= hi && i <= n; ++i) {
        c = c * static_cast<unsigned long>(n - i + 1) / static_cast<unsigned long>(i);
        if (i >= lo) sum += c;
    }
    return sum;
}

}  // namespace

VectorFamily vandermonde_family(std::size_t n, std::size_t t, std::uint32_t q) {
    FieldSpec f(q);
    if (static_cast<std::uint64_t>(t) * n > q)
        throw FieldTooSmall("vandermonde_family: need q >= t*n = " + std::to_string(t * n));

    VectorFamily fam{n, f, t, {}};
    fam.sets.reserve(n);
    std::size_t node = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Mat set(f, 0, n);
        for (std::size_t j = 0; j < t; ++j, ++node) {
            std::vector<FieldElem> row(n);
            FieldElem alpha = f.reduce(node);
            FieldElem p = 1;
            for (std::size_t c = 0; c < n; ++c) {
                row[c] = p;
                p = f.mul(p, alpha);
            }
            set.append_row(row);
        }
        fam.sets.push_back(std::move(set));
    }
    return fam;
}

bool all_small_subsets_independent(const Mat& rows, std::size_t max_size) {
    if (!rows.packed()) throw Error("all_small_subsets_independent: GF(2) matrices only");
    std::size_t wpr = rows.words_per_row();
    // Enumerate subsets of size <= max_size with a running xor. A dependent
    // subset of size <= max_size contains a nonempty zero-sum one, so
    // checking xor != 0 over all of them is exact.
    bool ok = true;
    auto rec = [&](auto&& self, std::size_t next, std::size_t size,
                   std::vector<std::uint64_t>& xr) -> void {
        if (!ok) return;
        if (size > 0) {
            bool zero = true;
            for (std::size_t w = 0; w < wpr; ++w)
                if (xr[w]) {
                    zero = false;
                    break;
                }
            if (zero) {
                ok = false;
                return;
            }
        }
        if (size == max_size) return;
        for (std::size_t r = next; r < rows.rows(); ++r) {
            for (std::size_t w = 0; w < wpr; ++w) xr[w] ^= rows.row_words(r)[w];
            self(self, r + 1, size + 1, xr);
            for (std::size_t w = 0; w < wpr; ++w) xr[w] ^= rows.row_words(r)[w];
            if (!ok) return;
        }
    };
    std::vector<std::uint64_t> xr(wpr, 0);
    rec(rec, 0, 0, xr);
    return ok;
}

GvResult gv_pair_family(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n < 1 || d < 2) throw InfeasibleParameters("gv_pair_family: need n >= 1 and d >= 2");
    std::size_t N = 2 * n;
    // counting condition of the greedy construction
    if (d >= 3) {
        cpp_int sum = binom_sum(N - 1, 1, d - 2);
        cpp_int lim = cpp_int(1) << n;
        if (!(sum < lim))
            throw InfeasibleParameters("gv_pair_family: sum_{i<=d-2} C(2n-1,i) >= 2^n");
    }

    FieldSpec f2(2);
    std::size_t wpr = (n + 63) / 64;

    // sums of at most d-2 chosen rows, grouped by how many rows went in
    std::vector<std::vector<std::vector<std::uint64_t>>> sums_by_count(d - 1);
    sums_by_count[0].push_back(std::vector<std::uint64_t>(wpr, 0));
    std::unordered_set<std::string> member;
    member.insert(words_key(sums_by_count[0][0]));

    Rng rng(seed);
    Mat rows(f2, 0, n);
    std::vector<std::vector<std::uint64_t>> chosen;

    auto candidate_ok = [&](const std::vector<std::uint64_t>& w) {
        return member.find(words_key(w)) == member.end();
    };
    auto add_row = [&](const std::vector<std::uint64_t>& w) {
        for (std::size_t c = d - 2; c >= 1; --c) {
            for (const auto& s : sums_by_count[c - 1]) {
                std::vector<std::uint64_t> x(wpr);
                for (std::size_t i = 0; i < wpr; ++i) x[i] = s[i] ^ w[i];
                if (member.insert(words_key(x)).second) sums_by_count[c].push_back(std::move(x));
            }
            if (c == 1) break;
        }
        chosen.push_back(w);
        std::vector<FieldElem> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = (w[c / 64] >> (c % 64)) & 1u;
        rows.append_row(row);
    };

    if (n <= 20) {
        // full candidate list in a fresh seeded order per row
        std::vector<std::uint64_t> cands(std::size_t(1) << n);
        for (std::uint64_t v = 0; v < cands.size(); ++v) cands[v] = v;
        for (std::size_t r = 0; r < N; ++r) {
            rng.shuffle(cands);
            bool found = false;
            for (std::uint64_t v : cands) {
                std::vector<std::uint64_t> w(wpr, 0);
                w[0] = v;
                if (candidate_ok(w)) {
                    add_row(w);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ConstructionStalled("gv_pair_family: no candidate row survives; retry with "
                                          "a new seed or smaller d");
        }
    } else {
        constexpr std::size_t kAttempts = 200000;
        for (std::size_t r = 0; r < N; ++r) {
            bool found = false;
            for (std::size_t a = 0; a < kAttempts; ++a) {
                std::vector<std::uint64_t> w(wpr, 0);
                for (std::size_t i = 0; i < wpr; ++i) w[i] = rng.next();
                if (n % 64) w[wpr - 1] &= (std::uint64_t(1) << (n % 64)) - 1;
                if (candidate_ok(w)) {
                    add_row(w);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ConstructionStalled("gv_pair_family: no candidate row survives; retry with "
                                          "a new seed or smaller d");
        }
    }

    GvResult res{GvWitness{std::move(rows), d, 0}, VectorFamily{n, f2, 2, {}}};
    if (all_small_subsets_independent(res.witness.rows, d - 1)) res.witness.verified_up_to = d - 1;

    res.family.sets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat set(f2, 0, n);
        set.append_row(res.witness.rows.row(2 * i));
        set.append_row(res.witness.rows.row(2 * i + 1));
        res.family.sets.push_back(std::move(set));
    }
    return res;
}

double binary_entropy(double lambda) {
    if (lambda <= 0.0 || lambda >= 1.0) return 0.0;
    return -lambda * std::log2(lambda) - (1.0 - lambda) * std::log2(1.0 - lambda);
}

GvRate gv_rate_check(std::size_t n) {
    if (n < 2) throw InfeasibleParameters("gv_rate_check: need n >= 2");
    constexpr double c = 0.2200557288;
    std::size_t d = static_cast<std::size_t>(std::ceil(c * static_cast<double>(n)));
    GvRate rate{c, d, false, false};
    std::size_t N = 2 * n;
    if (d < 3) {
        rate.feasible = true;  // empty sum
        rate.entropy_filter = true;
        return rate;
    }
    double lambda = static_cast<double>(d - 2) / static_cast<double>(N - 1);
    rate.entropy_filter =
        lambda < 0.5 &&
        static_cast<double>(N - 1) * binary_entropy(lambda) <= static_cast<double>(n - 1);
    cpp_int sum = binom_sum(N - 1, 1, d - 2);
    rate.feasible = sum < (cpp_int(1) << n);
    return rate;
}

MatchingFamily matching_family(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw Error("matching_family: need n >= 1");
    Rng rng(seed);
    MatchingFamily mf{n, rng.permutation(n), rng.permutation(n), VectorFamily{3 * n, FieldSpec(2), 2, {}}};

    auto unit = [&](std::size_t c) {
        std::vector<FieldElem> v(3 * n, 0);
        v[c] = 1;
        return v;
    };
    auto pair_vec = [&](std::size_t b, std::size_t c) {
        std::vector<FieldElem> v(3 * n, 0);
        v[n + b] = 1;
        v[2 * n + c] = 1;
        return v;
    };

    mf.family.sets.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::array<std::size_t, 3> targets{i, mf.sigma[i], mf.tau[i]};
        for (std::size_t j = 0; j < 3; ++j) {
            Mat set(mf.family.field, 0, 3 * n);
            set.append_row(unit(i));
            set.append_row(pair_vec(i, targets[j]));
            mf.family.sets.push_back(std::move(set));
        }
    }
    return mf;
}

VectorFamily random_family(std::size_t n, std::size_t m, std::size_t t, std::uint32_t q,
                           std::uint64_t seed) {
    if (n < 1 || m < 1 || t < 1) throw Error("random_family: need n, m, t >= 1");
    FieldSpec f(q);
    Rng rng(seed);
    VectorFamily fam{n, f, t, {}};
    fam.sets.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<FieldElem>> vecs;
        for (std::size_t j = 0; j < t; ++j) {
            std::vector<FieldElem> v(n);
            bool zero = true;
            while (zero) {
                for (std::size_t c = 0; c < n; ++c) {
                    v[c] = static_cast<FieldElem>(rng.below(q));
                    if (v[c]) zero = false;
                }
            }
            if (std::find(vecs.begin(), vecs.end(), v) == vecs.end()) vecs.push_back(std::move(v));
        }
        fam.sets.push_back(Mat::from_rows(f, n, vecs));
    }
    return fam;
}

SystemFromFamily family_to_system(const VectorFamily& fam, std::uint64_t seed,
                                  std::uint64_t rhs_cap) {
    validate_family(fam);
    SystemFromFamily out{MrhsSystem{fam.n, fam.field, {}}, {}};
    out.system.equations.reserve(fam.m());
    for (std::size_t i = 0; i < fam.m(); ++i) {
        const Mat& s = fam.sets[i];
        RankAccumulator acc(fam.field, fam.n);
        std::vector<std::vector<FieldElem>> kept;
        for (std::size_t r = 0; r < s.rows(); ++r)
            if (acc.add_row(s, r)) kept.push_back(s.row(r));
        if (kept.empty()) throw RankDeficient("family_to_system: set " + std::to_string(i) +
                                              " spans nothing (all zero vectors)");
        if (kept.size() != s.rows()) out.reduced.push_back({i, s.rows(), kept.size()});
        Mat a = Mat::from_rows(fam.field, fam.n, kept);
        std::vector<Rhs> rhs = random_rhs(a, Rng::substream(seed, i), rhs_cap);
        out.system.equations.push_back(make_equation(std::move(a), std::move(rhs)));
    }
    return out;
}

}  // namespace mrhs
