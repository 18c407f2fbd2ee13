#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mrhs/deficit.hpp"
#include "mrhs/equation.hpp"

namespace mrhs {

// Splits the tn x n matrix with rows (1, a_i, ..., a_i^(n-1)), a_i = 0..tn-1,
// into n consecutive sets of t rows. Needs a prime q >= tn so the nodes are
// pairwise distinct; then any n of the rows are independent and the family
// attains min deficit n - ceil(n/t).
VectorFamily vandermonde_family(std::size_t n, std::size_t t, std::uint32_t q);

// 2n rows over GF(2)^n, any d-1 of which are linearly independent, built
// greedily in a seeded random candidate order.
struct GvWitness {
    Mat rows;  // 2n x n over GF(2)
    std::size_t d;
    std::size_t verified_up_to;  // largest subset size checked independent
};
struct GvResult {
    GvWitness witness;
    VectorFamily family;  // the 2n rows split into n consecutive pairs
};
GvResult gv_pair_family(std::size_t n, std::size_t d, std::uint64_t seed);

// Exhaustive check that every subset of at most max_size rows is linearly
// independent (GF(2) matrices only).
bool all_small_subsets_independent(const Mat& rows, std::size_t max_size);

// Feasibility of the greedy target d = ceil(c*n) with c = 0.2200557288:
// sum_{i=1}^{d-2} C(2n-1, i) < 2^n. The entropy bound
// sum_{k<=lambda*N} C(N,k) <= 2^(N*H2(lambda)) serves as a sufficient fast
// filter; the decision is the exact big-integer sum.
struct GvRate {
    double c;
    std::size_t d;
    bool entropy_filter;  // filter alone already implies feasibility
    bool feasible;        // exact decision
};
GvRate gv_rate_check(std::size_t n);

double binary_entropy(double lambda);

// 3n sets over GF(2)^(3n): with unit vectors a_i, b_i, c_i on a three-way
// coordinate split and two independent uniform permutations sigma, tau,
// set 3i-2 is {a_i, b_i+c_i}, set 3i-1 is {a_i, b_i+c_sigma(i)}, set 3i is
// {a_i, b_i+c_tau(i)}. Each set holds one unit and one weight-2 vector; the
// rank structure is mirrored by a bipartite matching multigraph.
struct MatchingFamily {
    std::size_t n;
    std::vector<std::size_t> sigma, tau;  // permutations of [0, n)
    VectorFamily family;
};
MatchingFamily matching_family(std::size_t n, std::uint64_t seed);

// m sets of up to t uniform nonzero vectors (duplicates within a set are
// merged). Deterministic per seed.
VectorFamily random_family(std::size_t n, std::size_t m, std::size_t t, std::uint32_t q,
                           std::uint64_t seed);

// Rows of each X_i become the matrix A_i; dependent vectors are dropped so
// every A_i has full row rank, and the reductions are reported. RHS sets are
// drawn per equation from the 1/q inclusion model, substreams of seed.
struct SystemFromFamily {
    MrhsSystem system;
    // (set index, original size, kept size) for every set that was reduced
    std::vector<std::array<std::size_t, 3>> reduced;
};
SystemFromFamily family_to_system(const VectorFamily& fam, std::uint64_t seed,
                                  std::uint64_t rhs_cap = kDefaultEnumCap);

}  // namespace mrhs
