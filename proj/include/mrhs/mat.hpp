#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mrhs/errors.hpp"
#include "mrhs/gf.hpp"

namespace mrhs {

// Dense matrix over GF(q). Rows are machine-word packed when q == 2; the
// logical value of an entry never depends on the packing.
class Mat {
public:
    Mat(FieldSpec f, std::size_t rows, std::size_t cols);  // zero-filled
    static Mat identity(FieldSpec f, std::size_t n);
    // Entries are reduced mod q on the way in.
    static Mat from_rows(FieldSpec f, std::size_t cols,
                         const std::vector<std::vector<FieldElem>>& rows);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool packed() const { return field_.is_binary(); }

    FieldElem get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, FieldElem v);
    std::vector<FieldElem> row(std::size_t r) const;
    void append_row(const std::vector<FieldElem>& v);

    // Packed access, valid only when packed().
    std::size_t words_per_row() const { return wpr_; }
    const std::uint64_t* row_words(std::size_t r) const { return w_.data() + r * wpr_; }

    std::vector<FieldElem> apply(const std::vector<FieldElem>& x) const;  // A*x

    std::size_t rank() const;

    bool operator==(const Mat& o) const;

private:
    FieldSpec field_;
    std::size_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> w_;  // q == 2
    std::vector<FieldElem> v_;      // q > 2, row-major
};

std::ostream& operator<<(std::ostream& os, const Mat& m);

// Incremental rank of a growing list of n-vectors. Uses the packed kernel
// for q == 2 and plain modular elimination otherwise.
class RankAccumulator {
public:
    RankAccumulator(FieldSpec f, std::size_t n);

    void reset();
    // true when the vector grew the span
    bool add(std::vector<FieldElem> v);
    bool add_row(const Mat& m, std::size_t r);
    std::size_t rank() const { return field_.is_binary() ? pack_rows_.size() : gen_rows_.size(); }

private:
    bool add_packed(std::vector<std::uint64_t> w);

    FieldSpec field_;
    std::size_t n_, wpr_;
    std::vector<std::vector<std::uint64_t>> pack_rows_;  // sorted by pivot bit
    std::vector<std::size_t> pack_piv_;
    std::vector<std::vector<FieldElem>> gen_rows_;  // lead coefficient 1, sorted by pivot
    std::vector<std::size_t> gen_piv_;
};

// Dimension of the span of a list of equal-length vectors; 0 for the empty
// list. Throws DimensionMismatch when lengths differ.
std::size_t rank_of_rows(const std::vector<std::vector<FieldElem>>& rows, const FieldSpec& f);

// Textbook row reduction on the generic representation, deliberately free of
// the packed storage and the kernel dispatch. The packed path is tested for
// equality against this one.
std::size_t rank_reference(const std::vector<std::vector<FieldElem>>& rows, const FieldSpec& f);

struct Echelon {
    Mat basis;                        // reduced row-echelon form, one row per pivot
    std::vector<std::size_t> pivots;  // strictly increasing column indices
    Mat transform;                    // transform * basis == input, row for row
};
// Pivot rule: first nonzero column, first candidate row.
Echelon echelonize(const Mat& m);

struct StackReduce {
    // Rows of a1 verbatim, then the rows of a2 that grew the span, in order.
    Mat a;
    std::vector<std::size_t> kept;  // indices into a2 of the retained rows
    // dep[j] is empty when a2 row j was retained; otherwise coefficients over
    // the rows of `a` with  a2.row(j) == sum_i dep[j][i] * a.row(i).
    std::vector<std::vector<FieldElem>> dep;
};
// Stacks a2 under a1 and drops rows of a2 that are linear combinations of
// the rows above them, recording each combination.
StackReduce stack_reduce(const Mat& a1, const Mat& a2);

struct PointSolution {
    std::vector<FieldElem> particular;  // one x with a*x == b
    Mat kernel;                         // null space basis, (n - t) rows
};
// a must have full row rank t, so the system is always consistent.
PointSolution solve_point(const Mat& a, const std::vector<FieldElem>& b);

}  // namespace mrhs
