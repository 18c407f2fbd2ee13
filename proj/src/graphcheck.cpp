#include "mrhs/graphcheck.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace mrhs {

namespace {

void check_perm(const std::vector<std::size_t>& p, std::size_t n, const char* what) {
    if (p.size() != n) throw InvalidPermutation(std::string(what) + " has wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t v : p) {
        if (v >= n || seen[v]) throw InvalidPermutation(std::string(what) + " is not a permutation");
        seen[v] = true;
    }
}

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

BipartiteMultigraph build_matching_graph(const std::vector<std::size_t>& sigma,
                                         const std::vector<std::size_t>& tau, std::size_t n) {
    check_perm(sigma, n, "sigma");
    check_perm(tau, n, "tau");
    BipartiteMultigraph h{n, {}};
    h.edges.reserve(3 * n);
    for (std::size_t i = 0; i < n; ++i) h.edges.push_back(HEdge{i, i, EdgeLabel::Zero});
    for (std::size_t i = 0; i < n; ++i) h.edges.push_back(HEdge{i, sigma[i], EdgeLabel::Sigma});
    for (std::size_t i = 0; i < n; ++i) h.edges.push_back(HEdge{i, tau[i], EdgeLabel::Tau});
    return h;
}

std::size_t prefix_rank_via_graph(const MatchingFamily& fam,
                                  const std::vector<std::size_t>& prefix) {
    std::size_t n = fam.n;
    std::vector<bool> seen(3 * n, false);
    for (std::size_t k : prefix) {
        if (k >= 3 * n || seen[k]) throw InvalidPrefix("prefix indices must be distinct, < 3n");
        seen[k] = true;
    }

    std::set<std::size_t> units;
    std::set<std::pair<std::size_t, std::size_t>> support;
    for (std::size_t k : prefix) {
        std::size_t i = k / 3, j = k % 3;
        units.insert(i);
        std::size_t c = j == 0 ? i : (j == 1 ? fam.sigma[i] : fam.tau[i]);
        support.insert({i, c});
    }

    std::set<std::size_t> verts;  // b -> v, c -> n + v
    Dsu dsu(2 * n);
    std::size_t merges = 0;
    for (const auto& [b, c] : support) {
        verts.insert(b);
        verts.insert(n + c);
        if (dsu.unite(b, n + c)) ++merges;
    }
    std::size_t comp = verts.size() - merges;
    return units.size() + (verts.size() - comp);
}

std::vector<std::uint64_t> count_short_cycles(const BipartiteMultigraph& h, std::size_t l_max) {
    if (l_max > 8) throw Error("count_short_cycles: l_max must be <= 8");
    std::vector<std::uint64_t> counts(l_max, 0);
    if (l_max == 0) return counts;

    std::size_t n = h.n;
    std::size_t nv = 2 * n;  // b: [0, n), c: [n, 2n)
    std::vector<std::vector<std::size_t>> mult(nv, std::vector<std::size_t>(nv, 0));
    for (const HEdge& e : h.edges) ++mult[e.b][n + e.c];

    // 2-cycles: one per unordered pair of parallel edges
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = n; c < nv; ++c) {
            std::size_t m = mult[b][c];
            counts[0] += m * (m - 1) / 2;
        }
    if (l_max == 1) return counts;

    // longer cycles: simple cycles of the support graph, found by walking
    // paths rooted at their smallest vertex and halving for direction
    std::vector<std::vector<std::size_t>> adj(nv);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = n; b < nv; ++b)
            if (mult[a][b]) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }

    std::vector<std::uint64_t> closed(2 * l_max + 1, 0);  // by cycle length in edges
    std::vector<bool> on_path(nv, false);
    std::size_t root = 0;
    const std::size_t max_path = 2 * l_max - 1;

    // Walks paths root -> ... -> u whose interior vertices all exceed root,
    // so every cycle is rooted at its smallest vertex; each is then seen
    // once per direction.
    auto dfs = [&](auto&& self, std::size_t u, std::size_t edges_used) -> void {
        for (std::size_t v : adj[u]) {
            if (v == root) {
                if (edges_used >= 2) ++closed[edges_used + 1];
                continue;
            }
            if (v < root || on_path[v] || edges_used + 1 > max_path) continue;
            on_path[v] = true;
            self(self, v, edges_used + 1);
            on_path[v] = false;
        }
    };
    for (root = 0; root < nv; ++root) {
        on_path.assign(nv, false);
        on_path[root] = true;
        dfs(dfs, root, 0);
    }
    for (std::size_t l = 2; l <= l_max; ++l) counts[l - 1] = closed[2 * l] / 2;
    return counts;
}

}  // namespace mrhs
