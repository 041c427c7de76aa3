#pragma once

// The blue/red edge coloring over empirical de Polignac membership, a
// deterministic clique search, Ramsey number bounds, and a desk-scale
// exhaustive verifier for small Ramsey statements.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polignac/errors.hpp"
#include "polignac/primes.hpp"

namespace polignac {

enum class EdgeColor { Blue, Red };

inline const char* to_string(EdgeColor c) {
    return c == EdgeColor::Blue ? "blue" : "red";
}

// Complete graph on ascending vertices with each edge (i, j) colored blue
// exactly when v_j - v_i is an empirical de Polignac number.
class ColoredGraph {
public:
    static ColoredGraph color(std::vector<uint64_t> vertices, const EmpiricalPol& pol) {
        ColoredGraph g(std::move(vertices), pol.ref());
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = i + 1; j < g.size(); ++j)
                if (is_empirical_depolignac(g.vertices_[j] - g.vertices_[i], pol))
                    g.set_blue(i, j);
        return g;
    }

    // Explicit coloring, for diagnostics and tests (0-based index pairs).
    static ColoredGraph from_blue_pairs(std::vector<uint64_t> vertices,
                                        const std::vector<std::pair<size_t, size_t>>& blue,
                                        std::string pol_ref) {
        ColoredGraph g(std::move(vertices), std::move(pol_ref));
        for (auto [i, j] : blue) {
            if (i >= g.size() || j >= g.size() || i == j)
                throw ConfigError("blue pair out of range");
            g.set_blue(i, j);
        }
        return g;
    }

    size_t size() const { return vertices_.size(); }
    const std::vector<uint64_t>& vertices() const { return vertices_; }

    bool is_blue(size_t i, size_t j) const { return blue_[i * size() + j] != 0; }

    uint64_t blue_edge_count() const {
        uint64_t total = 0;
        for (size_t i = 0; i < size(); ++i)
            for (size_t j = i + 1; j < size(); ++j)
                if (is_blue(i, j)) ++total;
        return total;
    }

    uint64_t edge_count() const {
        return static_cast<uint64_t>(size()) * (size() - 1) / 2;
    }

    uint64_t red_edge_count() const { return edge_count() - blue_edge_count(); }

    const std::string& pol_ref() const { return pol_ref_; }

private:
    ColoredGraph(std::vector<uint64_t> vertices, std::string pol_ref)
        : vertices_(std::move(vertices)), pol_ref_(std::move(pol_ref)) {
        if (vertices_.size() < 2)
            throw ConfigError("colored graph needs at least 2 vertices");
        for (size_t i = 1; i < vertices_.size(); ++i)
            if (vertices_[i] <= vertices_[i - 1])
                throw ConfigError("graph vertices must be strictly ascending");
        blue_.assign(vertices_.size() * vertices_.size(), 0);
    }

    void set_blue(size_t i, size_t j) {
        blue_[i * size() + j] = 1;
        blue_[j * size() + i] = 1;
    }

    std::vector<uint64_t> vertices_;
    std::vector<uint8_t> blue_;
    std::string pol_ref_;
};

inline ColoredGraph color_graph(std::vector<uint64_t> vertices, const EmpiricalPol& pol) {
    return ColoredGraph::color(std::move(vertices), pol);
}

namespace detail {

inline bool clique_dfs(const std::vector<std::vector<uint8_t>>& adj,
                       const std::vector<size_t>& candidates, size_t need,
                       std::vector<size_t>& clique) {
    if (need == 0) return true;
    if (candidates.size() < need) return false;
    for (size_t idx = 0; idx + need <= candidates.size(); ++idx) {
        size_t v = candidates[idx];
        clique.push_back(v);
        std::vector<size_t> next;
        next.reserve(candidates.size() - idx - 1);
        for (size_t k = idx + 1; k < candidates.size(); ++k)
            if (adj[v][candidates[k]]) next.push_back(candidates[k]);
        if (clique_dfs(adj, next, need - 1, clique)) return true;
        clique.pop_back();
    }
    return false;
}

} // namespace detail

// Branch-and-bound clique search in the chosen color class. Candidates are
// ordered by degree (descending, ties by index) so results are reproducible.
// Returns ascending 1-based vertex indices, or nullopt.
inline std::optional<std::vector<size_t>> find_clique(const ColoredGraph& g,
                                                      EdgeColor color, size_t m) {
    if (m < 1)
        throw ConfigError("clique size must be >= 1");
    size_t n = g.size();
    if (m > n) return std::nullopt;

    std::vector<std::vector<uint8_t>> adj(n, std::vector<uint8_t>(n, 0));
    std::vector<size_t> degree(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            bool match = g.is_blue(i, j) == (color == EdgeColor::Blue);
            adj[i][j] = adj[j][i] = match ? 1 : 0;
            if (match) {
                ++degree[i];
                ++degree[j];
            }
        }

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return degree[a] > degree[b];
    });

    std::vector<size_t> clique;
    if (!detail::clique_dfs(adj, order, m, clique)) return std::nullopt;
    std::sort(clique.begin(), clique.end());
    for (size_t& v : clique) ++v; // 1-based
    return clique;
}

struct RamseyQuery {
    uint64_t r = 1;
    uint64_t s = 1;

    RamseyQuery(uint64_t r_, uint64_t s_) : r(r_), s(s_) {
        if (r < 1 || s < 1)
            throw ConfigError("Ramsey query needs r >= 1 and s >= 1");
    }
};

struct RamseyBound {
    uint64_t value = 0;
    bool exact = false;     // from the built-in table
    bool saturated = false; // binomial bound exceeded 2^63-1
};

// Exact values where they are forced or verified (R(1,s) = R(r,1) = 1,
// R(2,s) = s, R(r,2) = r, R(3,3) = 6); the Erdos-Szekeres binomial bound
// C(r+s-2, r-1) otherwise, saturating at 2^63-1.
inline RamseyBound ramsey_bound(const RamseyQuery& q) {
    uint64_t r = q.r, s = q.s;
    if (r == 1 || s == 1) return {1, true, false};
    if (r == 2) return {s, true, false};
    if (s == 2) return {r, true, false};
    if (r == 3 && s == 3) return {6, true, false};

    unsigned __int128 n = static_cast<unsigned __int128>(r) + s - 2;
    uint64_t k = static_cast<uint64_t>(std::min(r, s)) - 1;
    unsigned __int128 c = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > kMaxSieveLimit) return {kMaxSieveLimit, false, true};
    }
    return {static_cast<uint64_t>(c), false, false};
}

// Edges of K_n in the bit order used by the exhaustive verifier.
inline std::vector<std::pair<unsigned, unsigned>> complete_graph_edges(unsigned n) {
    std::vector<std::pair<unsigned, unsigned>> edges;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return edges;
}

struct RamseyVerification {
    bool holds = false;
    unsigned n = 0;
    // Set when holds is false: an edge coloring of K_n (bit set = blue edge,
    // in complete_graph_edges order) with no blue K_r and no red K_s.
    std::optional<uint32_t> counterexample;
};

// Checks "every blue-red coloring of K_n has a blue K_r or a red K_s" by
// enumerating all 2^C(n,2) colorings. Capped at C(n,2) <= 20.
inline RamseyVerification verify_ramsey_exhaustive(uint64_t r, uint64_t s, unsigned n) {
    if (r < 1 || s < 1 || n < 1)
        throw ConfigError("exhaustive Ramsey check needs r, s, n >= 1");
    uint64_t edge_count = static_cast<uint64_t>(n) * (n - 1) / 2;
    if (edge_count > 20)
        throw TooLarge("exhaustive Ramsey check capped at C(n,2) <= 20 edges, got " +
                       std::to_string(edge_count));

    if (r == 1 || s == 1) return {true, n, std::nullopt}; // a single vertex suffices

    auto edges = complete_graph_edges(n);
    std::vector<std::vector<unsigned>> edge_index(n, std::vector<unsigned>(n, 0));
    for (unsigned e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        edge_index[i][j] = edge_index[j][i] = e;
    }

    auto subset_masks = [&](uint64_t size) {
        std::vector<uint32_t> masks;
        if (size > n) return masks;
        // enumerate all size-subsets of {0..n-1}
        for (uint32_t vm = 0; vm < (1u << n); ++vm) {
            if (static_cast<uint64_t>(__builtin_popcount(vm)) != size) continue;
            uint32_t em = 0;
            for (unsigned i = 0; i < n; ++i) {
                if (!(vm & (1u << i))) continue;
                for (unsigned j = i + 1; j < n; ++j)
                    if (vm & (1u << j)) em |= 1u << edge_index[i][j];
            }
            masks.push_back(em);
        }
        return masks;
    };

    auto blue_masks = subset_masks(r);
    auto red_masks = subset_masks(s);

    for (uint32_t coloring = 0; coloring < (1u << edge_count); ++coloring) {
        bool ok = false;
        for (uint32_t bm : blue_masks)
            if ((coloring & bm) == bm) {
                ok = true;
                break;
            }
        if (!ok) {
            for (uint32_t rm : red_masks)
                if ((coloring & rm) == 0) {
                    ok = true;
                    break;
                }
        }
        if (!ok) return {false, n, coloring};
    }
    return {true, n, std::nullopt};
}

} // namespace polignac
