#include "mrhs/equation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "mrhs/rng.hpp"

namespace mrhs {

namespace {

void check_order(std::size_t m, const std::vector<std::size_t>& order) {
    if (order.size() != m) throw InvalidPermutation("order has wrong length");
    std::vector<bool> seen(m, false);
    for (std::size_t i : order) {
        if (i >= m || seen[i]) throw InvalidPermutation("order is not a permutation");
        seen[i] = true;
    }
}

std::string key_of(const std::vector<FieldElem>& v) {
    return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(FieldElem));
}

// q^e clamped against cap; returns cap+1 on overflow past cap.
std::uint64_t pow_capped(std::uint64_t q, std::size_t e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / q) return cap + 1;
        r *= q;
    }
    return r;
}

}  // namespace

MrhsEquation make_equation(Mat a, std::vector<Rhs> s) {
    std::size_t t = a.rows();
    if (a.rank() != t) throw RankDeficient("make_equation: matrix rows are dependent");
    for (const Rhs& b : s)
        if (b.size() != t) throw DimensionMismatch("make_equation: RHS length != row count");
    const FieldSpec& f = a.field();
    for (Rhs& b : s)
        for (FieldElem& x : b) x = f.reduce(x);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return MrhsEquation{std::move(a), std::move(s)};
}

void validate_system(const MrhsSystem& sys) {
    if (sys.equations.empty()) throw Error("system must contain at least one equation");
    for (const MrhsEquation& e : sys.equations) {
        if (e.n() != sys.n || e.a.field() != sys.field)
            throw DimensionMismatch("system: equation with different n or field");
    }
}

MrhsEquation glue(const MrhsEquation& e1, const MrhsEquation& e2) {
    if (e1.n() != e2.n() || e1.a.field() != e2.a.field())
        throw DimensionMismatch("glue: unknown count or field differs");
    const FieldSpec& f = e1.a.field();

    StackReduce sr = stack_reduce(e1.a, e2.a);
    std::size_t t1 = e1.t();

    std::vector<std::size_t> dep_rows;  // rows of a2 that were eliminated
    for (std::size_t j = 0; j < e2.t(); ++j)
        if (!sr.dep[j].empty()) dep_rows.push_back(j);

    // For a pair (b1, b2) to describe a consistent stacked system, every
    // eliminated row j of a2 must satisfy
    //   b2[j] == sum_{i<t1} dep[j][i]*b1[i] + sum_p dep[j][t1+p]*b2[kept[p]].
    // Group S1 by the left-hand contributions and probe with S2.
    std::unordered_map<std::string, std::vector<std::size_t>> buckets;
    buckets.reserve(e1.s.size() * 2);
    std::vector<FieldElem> sig(dep_rows.size());
    for (std::size_t i1 = 0; i1 < e1.s.size(); ++i1) {
        const Rhs& b1 = e1.s[i1];
        for (std::size_t d = 0; d < dep_rows.size(); ++d) {
            const auto& coef = sr.dep[dep_rows[d]];
            FieldElem acc = 0;
            for (std::size_t i = 0; i < t1; ++i) acc = f.add(acc, f.mul(coef[i], b1[i]));
            sig[d] = acc;
        }
        buckets[key_of(sig)].push_back(i1);
    }

    std::vector<Rhs> out;
    for (const Rhs& b2 : e2.s) {
        for (std::size_t d = 0; d < dep_rows.size(); ++d) {
            std::size_t j = dep_rows[d];
            const auto& coef = sr.dep[j];
            FieldElem acc = b2[j];
            for (std::size_t p = 0; p < sr.kept.size(); ++p)
                acc = f.sub(acc, f.mul(coef[t1 + p], b2[sr.kept[p]]));
            sig[d] = acc;
        }
        auto it = buckets.find(key_of(sig));
        if (it == buckets.end()) continue;
        for (std::size_t i1 : it->second) {
            Rhs b(sr.a.rows());
            std::copy(e1.s[i1].begin(), e1.s[i1].end(), b.begin());
            for (std::size_t p = 0; p < sr.kept.size(); ++p) b[t1 + p] = b2[sr.kept[p]];
            out.push_back(std::move(b));
        }
    }
    std::sort(out.begin(), out.end());
    return MrhsEquation{std::move(sr.a), std::move(out)};
}

SolveResult solve_system(const MrhsSystem& sys, const std::vector<std::size_t>& order) {
    validate_system(sys);
    check_order(sys.m(), order);

    MrhsEquation cur = sys.equations[order[0]];
    CostTrace trace;
    for (std::size_t idx = 1; idx < order.size(); ++idx) {
        const MrhsEquation& nxt = sys.equations[order[idx]];
        if (cur.s.empty()) {
            trace.steps.push_back(GlueStep{idx + 1, cur.t(), 0, 0, 0, true});
            continue;
        }
        MrhsEquation g = glue(cur, nxt);
        trace.steps.push_back(
            GlueStep{idx + 1, g.t(), cur.s.size(), nxt.s.size(), g.s.size(), false});
        cur = std::move(g);
    }
    return SolveResult{std::move(cur), std::move(trace)};
}

std::vector<std::vector<FieldElem>> extract_solutions(const MrhsEquation& e, std::uint64_t cap) {
    const FieldSpec& f = e.a.field();
    std::size_t n = e.n(), t = e.t();
    std::uint64_t coset = pow_capped(f.q(), n - t, cap);
    if (coset > cap)
        throw EnumerationTooLarge("extract_solutions: q^(n-t) exceeds cap of " +
                                  std::to_string(cap));

    std::vector<std::vector<FieldElem>> sols;
    for (const Rhs& b : e.s) {
        PointSolution ps = solve_point(e.a, b);
        std::size_t dim = ps.kernel.rows();
        std::vector<FieldElem> digits(dim, 0);
        for (;;) {
            std::vector<FieldElem> x = ps.particular;
            for (std::size_t i = 0; i < dim; ++i) {
                if (!digits[i]) continue;
                for (std::size_t c = 0; c < n; ++c)
                    x[c] = f.add(x[c], f.mul(digits[i], ps.kernel.get(i, c)));
            }
            sols.push_back(std::move(x));
            std::size_t pos = 0;
            while (pos < dim) {
                digits[pos] = f.add(digits[pos], 1);
                if (digits[pos]) break;
                ++pos;
            }
            if (pos == dim) break;
        }
    }
    std::sort(sols.begin(), sols.end());
    return sols;
}

std::vector<Rhs> random_rhs(const Mat& a, std::uint64_t seed, std::uint64_t cap) {
    const FieldSpec& f = a.field();
    std::size_t t = a.rows();
    std::uint64_t total = pow_capped(f.q(), t, cap);
    if (total > cap)
        throw ModelTooLarge("random_rhs: q^t exceeds cap of " + std::to_string(cap));

    Rng rng(seed);
    std::vector<Rhs> s;
    Rhs b(t, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        if (rng.one_in(f.q())) s.push_back(b);
        // advance b lexicographically (last coordinate fastest)
        for (std::size_t pos = t; pos-- > 0;) {
            b[pos] = f.add(b[pos], 1);
            if (b[pos]) break;
        }
    }
    return s;
}

std::vector<std::size_t> rank_profile(const MrhsSystem& sys, const std::vector<std::size_t>& order) {
    validate_system(sys);
    check_order(sys.m(), order);
    RankAccumulator acc(sys.field, sys.n);
    std::vector<std::size_t> r;
    r.reserve(sys.m());
    for (std::size_t i : order) {
        const Mat& a = sys.equations[i].a;
        for (std::size_t row = 0; row < a.rows(); ++row) acc.add_row(a, row);
        r.push_back(acc.rank());
    }
    return r;
}

double predicted_cost_bound(const MrhsSystem& sys, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> r = rank_profile(sys, order);
    double q = static_cast<double>(sys.field.q());
    double best = 0;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        double v = std::pow(q, static_cast<double>(r[k - 1]) - static_cast<double>(k));
        best = std::max(best, v);
    }
    return static_cast<double>(sys.m()) * best;
}

}  // namespace mrhs
