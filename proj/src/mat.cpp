#include "mrhs/mat.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "mrhs/kernels.hpp"

namespace mrhs {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

std::size_t first_set_bit(const std::uint64_t* w, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i)
        if (w[i]) return i * kWordBits + std::countr_zero(w[i]);
    return static_cast<std::size_t>(-1);
}

std::size_t first_nonzero(const std::vector<FieldElem>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) return i;
    return static_cast<std::size_t>(-1);
}

// r -= c * e  (elementwise, mod q)
void row_submul(std::vector<FieldElem>& r, const std::vector<FieldElem>& e, FieldElem c,
                const FieldSpec& f) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(r[i], f.mul(c, e[i]));
}

// r += c * e
void row_addmul(std::vector<FieldElem>& r, const std::vector<FieldElem>& e, FieldElem c,
                const FieldSpec& f) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(r[i], f.mul(c, e[i]));
}

void row_scale(std::vector<FieldElem>& r, FieldElem c, const FieldSpec& f) {
    for (auto& x : r) x = f.mul(x, c);
}

}  // namespace

Mat::Mat(FieldSpec f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), wpr_(f.is_binary() ? words_for(cols) : 0) {
    if (packed())
        w_.assign(rows_ * wpr_, 0);
    else
        v_.assign(rows_ * cols_, 0);
}

Mat Mat::identity(FieldSpec f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::from_rows(FieldSpec f, std::size_t cols, const std::vector<std::vector<FieldElem>>& rows) {
    Mat m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionMismatch("from_rows: row " + std::to_string(r) + " has length " +
                                    std::to_string(rows[r].size()) + ", expected " +
                                    std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.reduce(rows[r][c]));
    }
    return m;
}

FieldElem Mat::get(std::size_t r, std::size_t c) const {
    if (packed()) return (w_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    return v_[r * cols_ + c];
}

void Mat::set(std::size_t r, std::size_t c, FieldElem v) {
    if (packed()) {
        std::uint64_t mask = std::uint64_t(1) << (c % kWordBits);
        if (v & 1)
            w_[r * wpr_ + c / kWordBits] |= mask;
        else
            w_[r * wpr_ + c / kWordBits] &= ~mask;
    } else {
        v_[r * cols_ + c] = v;
    }
}

std::vector<FieldElem> Mat::row(std::size_t r) const {
    std::vector<FieldElem> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
    return out;
}

void Mat::append_row(const std::vector<FieldElem>& v) {
    if (v.size() != cols_) throw DimensionMismatch("append_row: wrong length");
    if (packed())
        w_.resize((rows_ + 1) * wpr_, 0);
    else
        v_.resize((rows_ + 1) * cols_, 0);
    ++rows_;
    for (std::size_t c = 0; c < cols_; ++c) set(rows_ - 1, c, field_.reduce(v[c]));
}

std::vector<FieldElem> Mat::apply(const std::vector<FieldElem>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("apply: vector length != cols");
    std::vector<FieldElem> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += std::uint64_t(get(r, c)) * x[c];
            if (acc >= (std::uint64_t(1) << 62)) acc %= field_.q();
        }
        y[r] = field_.reduce(acc);
    }
    return y;
}

std::size_t Mat::rank() const {
    RankAccumulator acc(field_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) acc.add_row(*this, r);
    return acc.rank();
}

bool Mat::operator==(const Mat& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (packed()) return w_ == o.w_;
    return v_ == o.v_;
}

std::ostream& operator<<(std::ostream& os, const Mat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << m.get(r, c);
        }
        os << '\n';
    }
    return os;
}

RankAccumulator::RankAccumulator(FieldSpec f, std::size_t n)
    : field_(f), n_(n), wpr_(f.is_binary() ? words_for(n) : 0) {}

void RankAccumulator::reset() {
    pack_rows_.clear();
    pack_piv_.clear();
    gen_rows_.clear();
    gen_piv_.clear();
}

bool RankAccumulator::add_packed(std::vector<std::uint64_t> w) {
    const auto& k = kern::active();
    for (std::size_t i = 0; i < pack_rows_.size(); ++i) {
        std::size_t p = pack_piv_[i];
        if ((w[p / kWordBits] >> (p % kWordBits)) & 1u)
            k.xor_rows(w.data(), pack_rows_[i].data(), wpr_);
    }
    std::size_t piv = first_set_bit(w.data(), wpr_);
    if (piv == static_cast<std::size_t>(-1)) return false;
    auto pos = std::lower_bound(pack_piv_.begin(), pack_piv_.end(), piv);
    std::size_t idx = static_cast<std::size_t>(pos - pack_piv_.begin());
    pack_piv_.insert(pos, piv);
    pack_rows_.insert(pack_rows_.begin() + idx, std::move(w));
    return true;
}

bool RankAccumulator::add(std::vector<FieldElem> v) {
    if (v.size() != n_) throw DimensionMismatch("RankAccumulator: wrong vector length");
    if (field_.is_binary()) {
        std::vector<std::uint64_t> w(wpr_, 0);
        for (std::size_t c = 0; c < n_; ++c)
            if (v[c] & 1) w[c / kWordBits] |= std::uint64_t(1) << (c % kWordBits);
        return add_packed(std::move(w));
    }
    for (std::size_t i = 0; i < gen_rows_.size(); ++i) {
        FieldElem c = v[gen_piv_[i]];
        if (c) row_submul(v, gen_rows_[i], c, field_);
    }
    std::size_t piv = first_nonzero(v);
    if (piv == static_cast<std::size_t>(-1)) return false;
    row_scale(v, field_.inv(v[piv]), field_);
    auto pos = std::lower_bound(gen_piv_.begin(), gen_piv_.end(), piv);
    std::size_t idx = static_cast<std::size_t>(pos - gen_piv_.begin());
    gen_piv_.insert(pos, piv);
    gen_rows_.insert(gen_rows_.begin() + idx, std::move(v));
    return true;
}

bool RankAccumulator::add_row(const Mat& m, std::size_t r) {
    if (m.cols() != n_ || m.field() != field_)
        throw DimensionMismatch("RankAccumulator: matrix shape/field mismatch");
    if (m.packed()) {
        std::vector<std::uint64_t> w(m.row_words(r), m.row_words(r) + wpr_);
        return add_packed(std::move(w));
    }
    return add(m.row(r));
}

std::size_t rank_of_rows(const std::vector<std::vector<FieldElem>>& rows, const FieldSpec& f) {
    if (rows.empty()) return 0;
    std::size_t n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw DimensionMismatch("rank: vectors have unequal lengths");
    RankAccumulator acc(f, n);
    for (const auto& r : rows) acc.add(r);
    return acc.rank();
}

std::size_t rank_reference(const std::vector<std::vector<FieldElem>>& rows, const FieldSpec& f) {
    if (rows.empty()) return 0;
    std::size_t n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw DimensionMismatch("rank: vectors have unequal lengths");
    std::vector<std::vector<FieldElem>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        a.push_back(r);
        for (auto& x : a.back()) x = f.reduce(x);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < a.size(); ++c) {
        std::size_t sel = rank;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        FieldElem ic = f.inv(a[rank][c]);
        row_scale(a[rank], ic, f);
        for (std::size_t r2 = rank + 1; r2 < a.size(); ++r2)
            if (a[r2][c]) row_submul(a[r2], a[rank], a[r2][c], f);
        ++rank;
    }
    return rank;
}

Echelon echelonize(const Mat& m) {
    const FieldSpec& f = m.field();
    std::vector<std::vector<FieldElem>> a;
    a.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(m.row(r));

    std::vector<std::size_t> pivots;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < m.cols() && rr < a.size(); ++c) {
        std::size_t sel = rr;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rr], a[sel]);
        row_scale(a[rr], f.inv(a[rr][c]), f);
        for (std::size_t r2 = 0; r2 < a.size(); ++r2)
            if (r2 != rr && a[r2][c]) row_submul(a[r2], a[rr], a[r2][c], f);
        pivots.push_back(c);
        ++rr;
    }

    Mat basis(f, 0, m.cols());
    for (std::size_t i = 0; i < rr; ++i) basis.append_row(a[i]);
    Mat transform(f, m.rows(), rr);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < rr; ++j) transform.set(r, j, m.get(r, pivots[j]));
    return Echelon{std::move(basis), std::move(pivots), std::move(transform)};
}

StackReduce stack_reduce(const Mat& a1, const Mat& a2) {
    if (a1.cols() != a2.cols() || a1.field() != a2.field())
        throw DimensionMismatch("stack_reduce: column count or field differs");
    const FieldSpec& f = a1.field();
    std::size_t n = a1.cols();
    std::size_t maxrows = a1.rows() + a2.rows();

    std::vector<std::vector<FieldElem>> out;  // rows of the result, verbatim
    out.reserve(maxrows);

    struct EchRow {
        std::vector<FieldElem> row;    // reduced, unit pivot
        std::vector<FieldElem> combo;  // row == sum_i combo[i] * out[i]
        std::size_t piv;
    };
    std::vector<EchRow> ech;  // sorted by piv
    ech.reserve(maxrows);

    // Reduces r in place; d accumulates the expression of the removed part
    // over the rows of `out`.
    auto reduce = [&](std::vector<FieldElem>& r, std::vector<FieldElem>& d) {
        for (const EchRow& e : ech) {
            FieldElem c = r[e.piv];
            if (!c) continue;
            row_submul(r, e.row, c, f);
            row_addmul(d, e.combo, c, f);
        }
    };
    auto insert = [&](std::vector<FieldElem> r, std::vector<FieldElem> combo) {
        std::size_t p = first_nonzero(r);
        FieldElem ip = f.inv(r[p]);
        row_scale(r, ip, f);
        row_scale(combo, ip, f);
        for (EchRow& g : ech) {
            FieldElem c = g.row[p];
            if (!c) continue;
            row_submul(g.row, r, c, f);
            row_submul(g.combo, combo, c, f);
        }
        EchRow e{std::move(r), std::move(combo), p};
        auto pos = std::lower_bound(ech.begin(), ech.end(), e,
                                    [](const EchRow& x, const EchRow& y) { return x.piv < y.piv; });
        ech.insert(pos, std::move(e));
    };

    for (std::size_t i = 0; i < a1.rows(); ++i) {
        std::vector<FieldElem> r = a1.row(i);
        std::vector<FieldElem> d(maxrows, 0);
        reduce(r, d);
        if (first_nonzero(r) == static_cast<std::size_t>(-1))
            throw RankDeficient("stack_reduce: a1 does not have full row rank");
        out.push_back(a1.row(i));
        std::vector<FieldElem> combo(maxrows, 0);
        for (std::size_t j = 0; j < maxrows; ++j) combo[j] = f.neg(d[j]);
        combo[out.size() - 1] = f.add(combo[out.size() - 1], 1);
        insert(std::move(r), std::move(combo));
    }

    StackReduce res{Mat(f, 0, n), {}, std::vector<std::vector<FieldElem>>(a2.rows())};
    for (std::size_t j = 0; j < a2.rows(); ++j) {
        std::vector<FieldElem> r = a2.row(j);
        std::vector<FieldElem> d(maxrows, 0);
        reduce(r, d);
        if (first_nonzero(r) == static_cast<std::size_t>(-1)) {
            res.dep[j] = std::move(d);
        } else {
            out.push_back(a2.row(j));
            res.kept.push_back(j);
            std::vector<FieldElem> combo(maxrows, 0);
            for (std::size_t i2 = 0; i2 < maxrows; ++i2) combo[i2] = f.neg(d[i2]);
            combo[out.size() - 1] = f.add(combo[out.size() - 1], 1);
            insert(std::move(r), std::move(combo));
        }
    }

    res.a = Mat::from_rows(f, n, out);
    for (auto& d : res.dep)
        if (!d.empty()) d.resize(out.size());
    return res;
}

PointSolution solve_point(const Mat& a, const std::vector<FieldElem>& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("solve_point: rhs length != row count");
    const FieldSpec& f = a.field();
    std::size_t t = a.rows(), n = a.cols();

    // eliminate on [A | b]
    std::vector<std::vector<FieldElem>> aug(t);
    for (std::size_t r = 0; r < t; ++r) {
        aug[r] = a.row(r);
        aug[r].push_back(b[r]);
    }
    std::vector<std::size_t> pivots;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < n && rr < t; ++c) {
        std::size_t sel = rr;
        while (sel < t && aug[sel][c] == 0) ++sel;
        if (sel == t) continue;
        std::swap(aug[rr], aug[sel]);
        row_scale(aug[rr], f.inv(aug[rr][c]), f);
        for (std::size_t r2 = 0; r2 < t; ++r2)
            if (r2 != rr && aug[r2][c]) row_submul(aug[r2], aug[rr], aug[r2][c], f);
        pivots.push_back(c);
        ++rr;
    }
    if (rr != t) throw RankDeficient("solve_point: matrix does not have full row rank");

    PointSolution sol{std::vector<FieldElem>(n, 0), Mat(f, 0, n)};
    for (std::size_t j = 0; j < t; ++j) sol.particular[pivots[j]] = aug[j][n];

    std::vector<bool> is_piv(n, false);
    for (std::size_t p : pivots) is_piv[p] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_piv[c]) continue;
        std::vector<FieldElem> v(n, 0);
        v[c] = 1;
        for (std::size_t j = 0; j < t; ++j) v[pivots[j]] = f.neg(aug[j][c]);
        sol.kernel.append_row(v);
    }
    return sol;
}

}  // namespace mrhs
