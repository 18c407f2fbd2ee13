#pragma once

#include <cstdint>
#include <vector>

#include "mrhs/mat.hpp"

namespace mrhs {

using Rhs = std::vector<FieldElem>;

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t(1) << 22;

// One inclusion a*X in s: a is t x n with full row rank, s holds distinct
// t-vectors in lexicographic order. s may be empty (no solutions).
struct MrhsEquation {
    Mat a;
    std::vector<Rhs> s;

    std::size_t t() const { return a.rows(); }
    std::size_t n() const { return a.cols(); }

    bool operator==(const MrhsEquation& o) const { return a == o.a && s == o.s; }
};

// Validates the matrix (full row rank, else RankDeficient), checks RHS
// lengths, removes duplicate RHS vectors and sorts them.
MrhsEquation make_equation(Mat a, std::vector<Rhs> s);

struct MrhsSystem {
    std::size_t n;
    FieldSpec field;
    std::vector<MrhsEquation> equations;

    std::size_t m() const { return equations.size(); }
    bool operator==(const MrhsSystem& o) const {
        return n == o.n && field == o.field && equations == o.equations;
    }
};

// Shared n/field/shape checks; throws on violation.
void validate_system(const MrhsSystem& sys);

// Combines two equations into one whose solutions are exactly the common
// solutions. The matrix part stacks a2 under a1 and drops dependent rows;
// the RHS part keeps one vector per consistent (b1, b2) pair, matched with a
// hash join so the work is O(|S1| + |S2| + |S_out|) expected.
MrhsEquation glue(const MrhsEquation& e1, const MrhsEquation& e2);

struct GlueStep {
    std::size_t step;        // prefix length k after this glue (2..m)
    std::size_t rank_after;  // rows of the accumulated matrix
    std::uint64_t left, right, out;
    bool skipped;  // RHS already empty, glue not performed
};

struct CostTrace {
    std::vector<GlueStep> steps;
    // Per-step cost is left + right + out; skipped steps cost zero.
    std::uint64_t total_cost() const {
        std::uint64_t c = 0;
        for (const GlueStep& g : steps)
            if (!g.skipped) c += g.left + g.right + g.out;
        return c;
    }
};

struct SolveResult {
    MrhsEquation final;
    CostTrace trace;
};

// Left fold of glue along the given order (m-1 steps). Once the running RHS
// set is empty the remaining glues are skipped; their trace entries carry
// the previous rank and zero sizes.
SolveResult solve_system(const MrhsSystem& sys, const std::vector<std::size_t>& order);

// All X with a*X in s, enumerated coset by coset. Throws EnumerationTooLarge
// when q^(n-t) exceeds cap. Output sorted, entries distinct.
std::vector<std::vector<FieldElem>> extract_solutions(const MrhsEquation& e,
                                                      std::uint64_t cap = kDefaultEnumCap);

// Draws a right-hand side set for a t-row matrix: every vector of GF(q)^t is
// included independently with probability 1/q (zeros of a uniformly random
// function GF(q)^t -> GF(q)). Throws ModelTooLarge when q^t exceeds cap.
std::vector<Rhs> random_rhs(const Mat& a, std::uint64_t seed, std::uint64_t cap = kDefaultEnumCap);

// r_k = rank of all rows of the first k matrices in the given order, k = 1..m.
std::vector<std::size_t> rank_profile(const MrhsSystem& sys, const std::vector<std::size_t>& order);

// m * max_k q^(r_k - k); the expected-volume bound for solving in this order.
double predicted_cost_bound(const MrhsSystem& sys, const std::vector<std::size_t>& order);

}  // namespace mrhs
