#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "mrhs/mat.hpp"
#include "mrhs/rng.hpp"
#include "oracle.hpp"

using namespace mrhs;
using Rows = std::vector<std::vector<FieldElem>>;

namespace {

Mat random_mat(FieldSpec f, std::size_t rows, std::size_t cols, Rng& rng) {
    Mat m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, static_cast<FieldElem>(rng.below(f.q())));
    return m;
}

Mat random_full_rank(FieldSpec f, std::size_t rows, std::size_t cols, Rng& rng) {
    for (;;) {
        Mat m = random_mat(f, rows, cols, rng);
        if (m.rank() == rows) return m;
    }
}

std::vector<std::vector<long long>> as_ll(const Mat& m) {
    std::vector<std::vector<long long>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<long long> row(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m.get(r, c);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

TEST_CASE("rank basics") {
    FieldSpec f2(2);
    CHECK(rank_of_rows({}, f2) == 0);
    Rows units;
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<FieldElem> v(6, 0);
        v[i] = 1;
        units.push_back(v);
    }
    CHECK(rank_of_rows(units, f2) == 6);
    CHECK_THROWS_AS(rank_of_rows({{1, 0}, {1}}, f2), DimensionMismatch);
}

TEST_CASE("any n rows of a tall Vandermonde matrix are independent") {
    for (auto [n, t, q] : {std::tuple<std::size_t, std::size_t, std::uint32_t>{4, 2, 11},
                           {6, 3, 19}}) {
        FieldSpec f(q);
        Rows rows;
        for (std::size_t i = 0; i < t * n; ++i) {
            std::vector<FieldElem> r(n);
            FieldElem p = 1;
            for (std::size_t c = 0; c < n; ++c) {
                r[c] = p;
                p = f.mul(p, static_cast<FieldElem>(i));
            }
            rows.push_back(r);
        }
        Rng rng(5 + n);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<std::size_t> pick = rng.permutation(t * n);
            Rows sub(rows.size() ? n : 0);
            for (std::size_t j = 0; j < n; ++j) sub[j] = rows[pick[j]];
            CHECK(rank_of_rows(sub, f) == n);
        }
    }
}

TEST_CASE("packed and generic ranks agree") {
    FieldSpec f2(2);
    Rng rng(123);
    for (int i = 0; i < 1000; ++i) {
        std::size_t rows = 1 + rng.below(10), cols = 1 + rng.below(80);
        Mat m = random_mat(f2, rows, cols, rng);
        Rows rr;
        for (std::size_t r = 0; r < rows; ++r) rr.push_back(m.row(r));
        CHECK(m.rank() == rank_reference(rr, f2));
    }
    FieldSpec f3(3);
    for (int i = 0; i < 200; ++i) {
        std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(12);
        Mat m = random_mat(f3, rows, cols, rng);
        Rows rr;
        for (std::size_t r = 0; r < rows; ++r) rr.push_back(m.row(r));
        CHECK(m.rank() == rank_reference(rr, f3));
        CHECK(m.rank() == oracle::rank(as_ll(m), 3));
    }
}

TEST_CASE("rank is monotone and subadditive") {
    Rng rng(77);
    for (std::uint32_t q : {2u, 5u}) {
        FieldSpec f(q);
        for (int i = 0; i < 100; ++i) {
            std::size_t n = 2 + rng.below(10);
            Rows v, w;
            for (std::size_t r = 0; r < 1 + rng.below(5); ++r) {
                std::vector<FieldElem> x(n);
                for (auto& e : x) e = static_cast<FieldElem>(rng.below(q));
                v.push_back(x);
            }
            for (std::size_t r = 0; r < 1 + rng.below(5); ++r) {
                std::vector<FieldElem> x(n);
                for (auto& e : x) e = static_cast<FieldElem>(rng.below(q));
                w.push_back(x);
            }
            Rows both = v;
            both.insert(both.end(), w.begin(), w.end());
            std::size_t rv = rank_of_rows(v, f), rw = rank_of_rows(w, f),
                        rb = rank_of_rows(both, f);
            CHECK(rv <= rb);
            CHECK(rb <= rv + rw);
        }
    }
}

TEST_CASE("echelonize") {
    FieldSpec f2(2);
    SUBCASE("zero matrix") {
        Echelon e = echelonize(Mat(f2, 3, 4));
        CHECK(e.basis.rows() == 0);
        CHECK(e.pivots.empty());
        CHECK(e.transform.rows() == 3);
        CHECK(e.transform.cols() == 0);
    }
    SUBCASE("identity maps to itself") {
        Mat id = Mat::identity(f2, 4);
        Echelon e = echelonize(id);
        CHECK(e.basis == id);
        CHECK(e.transform == id);
    }
    SUBCASE("dependent third row") {
        Mat m = Mat::from_rows(f2, 3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
        Echelon e = echelonize(m);
        CHECK(e.basis.rows() == 2);
        CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("transform reproduces each input row; idempotent on the basis") {
        Rng rng(31);
        for (std::uint32_t q : {2u, 11u}) {
            FieldSpec f(q);
            for (int i = 0; i < 50; ++i) {
                Mat m = random_mat(f, 1 + rng.below(6), 1 + rng.below(8), rng);
                Echelon e = echelonize(m);
                // rebuild every row from transform * basis
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    std::vector<FieldElem> rec(m.cols(), 0);
                    for (std::size_t j = 0; j < e.basis.rows(); ++j)
                        for (std::size_t c = 0; c < m.cols(); ++c)
                            rec[c] = f.add(rec[c], f.mul(e.transform.get(r, j), e.basis.get(j, c)));
                    CHECK(rec == m.row(r));
                }
                Echelon again = echelonize(e.basis);
                CHECK(again.basis == e.basis);
                std::size_t rk = e.basis.rows();
                for (std::size_t j = 1; j < e.pivots.size(); ++j)
                    CHECK(e.pivots[j - 1] < e.pivots[j]);
                CHECK(rk == m.rank());
            }
        }
    }
}

TEST_CASE("stack_reduce") {
    FieldSpec f2(2);
    SUBCASE("rows already in the span are all dependent") {
        Mat a1 = Mat::identity(f2, 3);
        Mat a2 = Mat::from_rows(f2, 3, {{1, 1, 0}, {1, 1, 1}});
        StackReduce sr = stack_reduce(a1, a2);
        CHECK(sr.a == a1);
        CHECK(sr.kept.empty());
        CHECK(sr.dep[0] == std::vector<FieldElem>{1, 1, 0});
        CHECK(sr.dep[1] == std::vector<FieldElem>{1, 1, 1});
    }
    SUBCASE("disjoint unit rows simply stack") {
        Mat a1 = Mat::from_rows(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
        Mat a2 = Mat::from_rows(f2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
        StackReduce sr = stack_reduce(a1, a2);
        CHECK(sr.a.rows() == 4);
        CHECK(sr.kept == std::vector<std::size_t>{0, 1});
        CHECK(sr.dep[0].empty());
        CHECK(sr.dep[1].empty());
        CHECK(sr.a.row(2) == a2.row(0));
    }
    SUBCASE("hand elimination example") {
        Mat a1 = Mat::identity(f2, 2);
        Mat a2 = Mat::from_rows(f2, 2, {{1, 1}});
        StackReduce sr = stack_reduce(a1, a2);
        CHECK(sr.a == a1);
        CHECK(sr.dep[0] == std::vector<FieldElem>{1, 1});
    }
    SUBCASE("random pairs: rank and dependency identities") {
        Rng rng(4242);
        for (std::uint32_t q : {2u, 3u, 11u}) {
            FieldSpec f(q);
            for (int i = 0; i < 60; ++i) {
                std::size_t n = 3 + rng.below(6);
                std::size_t t1 = 1 + rng.below(std::min<std::size_t>(n, 4));
                std::size_t t2 = 1 + rng.below(std::min<std::size_t>(n, 4));
                Mat a1 = random_full_rank(f, t1, n, rng);
                Mat a2 = random_full_rank(f, t2, n, rng);
                StackReduce sr = stack_reduce(a1, a2);
                // leading rows verbatim
                for (std::size_t r = 0; r < t1; ++r) CHECK(sr.a.row(r) == a1.row(r));
                // rank of the output equals rank of the concatenation
                std::vector<std::vector<long long>> cat = as_ll(a1);
                auto more = as_ll(a2);
                cat.insert(cat.end(), more.begin(), more.end());
                CHECK(sr.a.rows() == oracle::rank(cat, q));
                CHECK(sr.a.rank() == sr.a.rows());
                // each dependency reproduces the eliminated row
                for (std::size_t j = 0; j < t2; ++j) {
                    if (sr.dep[j].empty()) continue;
                    std::vector<FieldElem> rec(n, 0);
                    for (std::size_t i2 = 0; i2 < sr.a.rows(); ++i2)
                        for (std::size_t c = 0; c < n; ++c)
                            rec[c] = f.add(rec[c], f.mul(sr.dep[j][i2], sr.a.get(i2, c)));
                    CHECK(rec == a2.row(j));
                }
            }
        }
    }
    SUBCASE("rank-deficient a1 is rejected") {
        Mat bad = Mat::from_rows(f2, 3, {{1, 0, 1}, {1, 0, 1}});
        CHECK_THROWS_AS(stack_reduce(bad, Mat::identity(f2, 3)), RankDeficient);
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(stack_reduce(Mat(f2, 1, 3), Mat(f2, 1, 4)), DimensionMismatch);
    }
}

TEST_CASE("solve_point") {
    FieldSpec f2(2);
    SUBCASE("identity system") {
        Mat id = Mat::identity(f2, 3);
        PointSolution s = solve_point(id, {1, 0, 1});
        CHECK(s.particular == std::vector<FieldElem>{1, 0, 1});
        CHECK(s.kernel.rows() == 0);
    }
    SUBCASE("one equation, one free variable") {
        Mat a = Mat::from_rows(f2, 2, {{1, 1}});
        PointSolution s = solve_point(a, {1});
        CHECK(s.particular == std::vector<FieldElem>{1, 0});
        CHECK(s.kernel.rows() == 1);
        CHECK(s.kernel.row(0) == std::vector<FieldElem>{1, 1});
    }
    SUBCASE("square Vandermonde system has a unique solution") {
        FieldSpec f(11);
        Mat a(f, 3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            FieldElem p = 1;
            for (std::size_t c = 0; c < 3; ++c) {
                a.set(r, c, p);
                p = f.mul(p, static_cast<FieldElem>(r));
            }
        }
        PointSolution s = solve_point(a, {5, 2, 9});
        CHECK(s.kernel.rows() == 0);
        CHECK(a.apply(s.particular) == std::vector<FieldElem>{5, 2, 9});
    }
    SUBCASE("random systems: particular and kernel are genuine") {
        Rng rng(9);
        for (std::uint32_t q : {2u, 3u, 11u}) {
            FieldSpec f(q);
            for (int i = 0; i < 50; ++i) {
                std::size_t n = 2 + rng.below(7);
                std::size_t t = 1 + rng.below(n);
                Mat a = random_full_rank(f, t, n, rng);
                std::vector<FieldElem> b(t);
                for (auto& x : b) x = static_cast<FieldElem>(rng.below(q));
                PointSolution s = solve_point(a, b);
                CHECK(a.apply(s.particular) == b);
                CHECK(s.kernel.rows() == n - t);
                std::vector<FieldElem> zero(t, 0);
                for (std::size_t kr = 0; kr < s.kernel.rows(); ++kr)
                    CHECK(a.apply(s.kernel.row(kr)) == zero);
                CHECK(s.kernel.rank() == n - t);
            }
        }
    }
    SUBCASE("errors") {
        Mat a = Mat::from_rows(f2, 2, {{1, 1}});
        CHECK_THROWS_AS(solve_point(a, {1, 0}), DimensionMismatch);
        Mat bad = Mat::from_rows(f2, 2, {{1, 1}, {1, 1}});
        CHECK_THROWS_AS(solve_point(bad, {1, 0}), RankDeficient);
    }
}
