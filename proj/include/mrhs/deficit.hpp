#pragma once

#include <cstdint>
#include <vector>

#include "mrhs/mat.hpp"

namespace mrhs {

// Collection X_1..X_m of vector sets in GF(q)^n, |X_i| <= t. The same set
// may occur more than once.
struct VectorFamily {
    std::size_t n;
    FieldSpec field;
    std::size_t t;          // declared per-set bound
    std::vector<Mat> sets;  // each Mat holds the vectors of one set as rows

    std::size_t m() const { return sets.size(); }
    bool operator==(const VectorFamily& o) const {
        return n == o.n && field == o.field && t == o.t && sets == o.sets;
    }
};

void validate_family(const VectorFamily& fam);

// How a prefix grows: by the rank of the union of its sets, or by the number
// of distinct vectors in that union. Both are monotone and subadditive.
enum class GrowthMode { Rank, Union };

struct ProfileEntry {
    std::size_t k;       // prefix length, 1-based
    std::size_t growth;  // growth of the first k sets
    std::int64_t deficit;  // growth - k
};

struct DeficitReport {
    std::vector<std::size_t> order;  // permutation of [0, m)
    std::vector<ProfileEntry> profile;
    std::int64_t max_deficit;
    std::size_t argmax_k;  // smallest k attaining max_deficit
};

// Exact profile of one ordering; growth is computed incrementally.
DeficitReport prefix_deficit(const VectorFamily& fam, GrowthMode mode,
                             const std::vector<std::size_t>& order);

inline constexpr std::size_t kExactDeficitCap = 22;

// Minimum over all orderings of the max prefix deficit, by dynamic
// programming over subsets: best(S) = max(growth(S) - |S|, min_i best(S\i)).
// Valid because growth of a prefix depends only on the prefix as a set.
// Growth is recomputed from scratch per subset with the packed kernel, one
// growth byte per subset. Throws TooManySets above the cap.
DeficitReport min_deficit_exact(const VectorFamily& fam, GrowthMode mode,
                                std::size_t cap = kExactDeficitCap);

// Reference optimum by enumerating all m! orderings (m <= cap).
DeficitReport min_deficit_bruteforce(const VectorFamily& fam, GrowthMode mode,
                                     std::size_t cap = 8);

// Ordering built by repeatedly taking the unused set with the smallest
// growth increment, ties to the lowest index. Value >= the exact minimum.
DeficitReport min_deficit_greedy(const VectorFamily& fam, GrowthMode mode);

// For m == n rank-mode families: min deficit <= n - ceil(n/t). Uses the
// exact order when m fits the cap, the greedy order otherwise.
bool upper_bound_check(const VectorFamily& fam, std::size_t exact_cap = kExactDeficitCap);

}  // namespace mrhs
