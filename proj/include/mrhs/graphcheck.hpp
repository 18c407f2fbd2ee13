#pragma once

#include <cstdint>
#include <vector>

#include "mrhs/constructions.hpp"

namespace mrhs {

enum class EdgeLabel { Zero, Sigma, Tau };

struct HEdge {
    std::size_t b, c;  // endpoints in the two vertex classes, each in [0, n)
    EdgeLabel label;
};

// Bipartite multigraph on B u C with the three matchings b_i c_i,
// b_i c_sigma(i), b_i c_tau(i); parallel edges are kept.
struct BipartiteMultigraph {
    std::size_t n;
    std::vector<HEdge> edges;  // always exactly 3n
};

BipartiteMultigraph build_matching_graph(const std::vector<std::size_t>& sigma,
                                         const std::vector<std::size_t>& tau, std::size_t n);

// Rank of the union of the prefix's vector sets, read off the graph:
// (number of distinct units touched) + (vertices - components) of the
// subgraph spanned by the prefix's b+c edges. Parallel edges beyond the
// first duplicate the same vector and contribute nothing, so the subgraph
// is taken on the simple support. Must match Gaussian rank exactly.
std::size_t prefix_rank_via_graph(const MatchingFamily& fam,
                                  const std::vector<std::size_t>& prefix);

// counts[l-1] = number of cycles of length 2l, l = 1..l_max. Two parallel
// edges form a 2-cycle (counted per unordered pair); longer cycles are
// simple cycles of the support graph, each counted once.
std::vector<std::uint64_t> count_short_cycles(const BipartiteMultigraph& h, std::size_t l_max);

}  // namespace mrhs
