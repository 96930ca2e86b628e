// Test-only helpers: random corpora and brute-force reference oracles that
// share no code with the library's algorithms.
#ifndef ORTHORANK_TESTS_SUPPORT_HPP
#define ORTHORANK_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orthorank/graph.hpp"

namespace testing_support {

using orthorank::Edge;
using orthorank::Graph;

inline Graph random_graph(int n, double p, std::mt19937_64& rng, std::string name = {}) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            if (coin(rng)) edges.push_back({v, w});
    return Graph(n, std::move(edges), std::move(name));
}

/// `count` random connected graphs with 2 <= n <= max_n, fixed by `seed`.
inline std::vector<Graph> connected_corpus(int count, int max_n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> order(2, max_n);
    std::uniform_real_distribution<double> density(0.2, 0.9);
    std::vector<Graph> out;
    while (static_cast<int>(out.size()) < count) {
        const int n = order(rng);
        Graph g = random_graph(n, density(rng), rng, "random#" + std::to_string(out.size()));
        if (g.connected()) out.push_back(std::move(g));
    }
    return out;
}

inline std::vector<std::vector<bool>> adjacency(const Graph& g) {
    std::vector<std::vector<bool>> a(g.order(), std::vector<bool>(g.order(), false));
    for (auto [v, w] : g.edges()) a[v][w] = a[w][v] = true;
    return a;
}

/// Smallest k admitting a proper k-colouring, by trying every assignment.
inline int brute_chromatic(const Graph& g) {
    const int n = g.order();
    const auto a = adjacency(g);
    for (int k = 1; k <= n; ++k) {
        std::vector<int> c(n, 0);
        while (true) {
            bool proper = true;
            for (int v = 0; v < n && proper; ++v)
                for (int w = v + 1; w < n && proper; ++w)
                    if (a[v][w] && c[v] == c[w]) proper = false;
            if (proper) return k;
            int i = 0;
            while (i < n && ++c[i] == k) c[i++] = 0;
            if (i == n) break;
        }
    }
    return n;
}

inline bool is_independent(const std::vector<std::vector<bool>>& a, std::uint32_t mask) {
    const int n = static_cast<int>(a.size());
    for (int v = 0; v < n; ++v)
        if (mask >> v & 1)
            for (int w = v + 1; w < n; ++w)
                if ((mask >> w & 1) && a[v][w]) return false;
    return true;
}

/// All independent sets as bitmasks (n <= 20), the empty set excluded.
inline std::vector<std::uint32_t> all_independent_sets(const Graph& g) {
    const auto a = adjacency(g);
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 1; m < (1u << g.order()); ++m)
        if (is_independent(a, m)) out.push_back(m);
    return out;
}

/// Chromatic number as the fewest independent sets covering V, by dynamic
/// programming over vertex subsets. Fast enough for n <= 12.
inline int subset_chromatic(const Graph& g) {
    const int n = g.order();
    const auto a = adjacency(g);
    const std::uint32_t full = (1u << n) - 1;
    std::vector<bool> indep(full + 1, false);
    for (std::uint32_t m = 0; m <= full; ++m) indep[m] = is_independent(a, m);
    std::vector<int> best(full + 1, n + 1);
    best[0] = 0;
    for (std::uint32_t m = 1; m <= full; ++m) {
        const std::uint32_t low = m & (~m + 1);
        // every cover of m has a set containing its lowest vertex
        for (std::uint32_t s = m; s; s = (s - 1) & m)
            if ((s & low) && indep[s]) best[m] = std::min(best[m], best[m & ~s] + 1);
    }
    return best[full];
}

inline int brute_alpha(const Graph& g) {
    int best = 0;
    for (auto m : all_independent_sets(g)) best = std::max(best, std::popcount(m));
    return best;
}

inline int brute_omega(const Graph& g) { return brute_alpha(orthorank::complement(g)); }

/// Reference graph6 encoder written directly from the format description.
inline std::string reference_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else {
        out += static_cast<char>(126);
        for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
    }
    const auto a = adjacency(g);
    std::vector<int> bits;
    for (int w = 1; w < n; ++w)
        for (int v = 0; v < w; ++v) bits.push_back(a[v][w] ? 1 : 0);
    while (bits.size() % 6) bits.push_back(0);
    for (std::size_t i = 0; i < bits.size(); i += 6) {
        int x = 0;
        for (int j = 0; j < 6; ++j) x = x * 2 + bits[i + j];
        out += static_cast<char>(x + 63);
    }
    return out;
}

/// Petersen graph drawn as outer 5-cycle, inner pentagram and spokes.
inline Graph petersen_drawing() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.push_back({i, (i + 1) % 5});
        e.push_back({5 + i, 5 + (i + 2) % 5});
        e.push_back({i, 5 + i});
    }
    for (auto& [v, w] : e)
        if (v > w) std::swap(v, w);
    return Graph(10, e, "petersen");
}

} // namespace testing_support

#endif // ORTHORANK_TESTS_SUPPORT_HPP
