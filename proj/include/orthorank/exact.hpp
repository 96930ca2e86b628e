#ifndef ORTHORANK_EXACT_HPP
#define ORTHORANK_EXACT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "orthorank/graph.hpp"
#include "orthorank/rational.hpp"

namespace orthorank {

using VertexSet = std::uint64_t;

inline constexpr int kMaxExactOrder = 64;
inline constexpr int kMaxFractionalOrder = 20;
inline constexpr long long kDefaultNodeBudget = 20'000'000;

/// Exact value when `exact`; otherwise only [lower, upper] is known.
struct OracleResult {
    bool exact = false;
    int lower = 0;
    int upper = 0;
    long long nodes = 0;

    int value() const { return exact ? lower : -1; }
};

namespace detail {

inline std::vector<VertexSet> neighbor_masks(const Graph& g) {
    std::vector<VertexSet> nb(static_cast<std::size_t>(g.order()), 0);
    for (auto [v, w] : g.edges()) {
        nb[v] |= VertexSet{1} << w;
        nb[w] |= VertexSet{1} << v;
    }
    return nb;
}

inline VertexSet all_vertices(int n) { return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

inline int lowest(VertexSet s) { return std::countr_zero(s); }

/// Branch and bound maximum clique with greedy-colouring upper bounds.
class MaxClique {
public:
    MaxClique(std::vector<VertexSet> nb, long long budget) : nb_(std::move(nb)), budget_(budget) {}

    void run(VertexSet candidates) {
        VertexSet current = 0;
        expand(current, 0, candidates);
    }

    VertexSet best() const { return best_; }
    int best_size() const { return best_size_; }
    long long nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    void expand(VertexSet current, int size, VertexSet cand) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (cand == 0) {
            if (size > best_size_) {
                best_size_ = size;
                best_ = current;
            }
            return;
        }
        // greedy colour classes give an upper bound per vertex
        std::vector<int> order, colour;
        VertexSet uncoloured = cand;
        int k = 0;
        while (uncoloured) {
            ++k;
            VertexSet q = uncoloured;
            while (q) {
                const int v = lowest(q);
                q &= ~(VertexSet{1} << v);
                q &= ~nb_[v];
                uncoloured &= ~(VertexSet{1} << v);
                order.push_back(v);
                colour.push_back(k);
            }
        }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (size + colour[i] <= best_size_) return;
            const int v = order[i];
            expand(current | (VertexSet{1} << v), size + 1, cand & nb_[v]);
            cand &= ~(VertexSet{1} << v);
            if (exhausted_) return;
        }
    }

    std::vector<VertexSet> nb_;
    long long budget_;
    long long nodes_ = 0;
    bool exhausted_ = false;
    VertexSet best_ = 0;
    int best_size_ = 0;
};

inline void require_exact_order(const Graph& g) {
    if (g.order() > kMaxExactOrder)
        throw ValidationError("exact oracles support n <= " + std::to_string(kMaxExactOrder));
}

} // namespace detail

/// Vertex set of a maximum clique (exact when the result is exact).
struct CliqueResult {
    OracleResult size;
    VertexSet witness = 0;
};

inline CliqueResult max_clique(const Graph& g, long long budget = kDefaultNodeBudget) {
    detail::require_exact_order(g);
    detail::MaxClique mc(detail::neighbor_masks(g), budget);
    mc.run(detail::all_vertices(g.order()));
    CliqueResult r;
    r.witness = mc.best();
    r.size.lower = mc.best_size();
    r.size.upper = mc.exhausted() ? g.order() : mc.best_size();
    r.size.exact = !mc.exhausted();
    r.size.nodes = mc.nodes();
    return r;
}

struct CliqueIndependence {
    OracleResult omega;
    OracleResult alpha;
};

/// omega(g) and alpha(g) = omega(complement(g)).
inline CliqueIndependence clique_and_independence(const Graph& g, long long budget = kDefaultNodeBudget) {
    return {max_clique(g, budget).size, max_clique(complement(g), budget).size};
}

namespace detail {

/// Exact colouring by DSATUR branch and bound. A maximum clique is precoloured
/// 0..omega-1 to break colour symmetry.
class DsaturColouring {
public:
    DsaturColouring(const Graph& g, long long budget)
        : n_(g.order()), nb_(neighbor_masks(g)), budget_(budget), colour_(static_cast<std::size_t>(n_), -1),
          forbidden_(static_cast<std::size_t>(n_), 0) {}

    OracleResult run(VertexSet clique, int clique_size) {
        lower_ = std::max(clique_size, n_ > 0 ? 1 : 0);
        best_ = greedy_upper();
        if (best_ > lower_) {
            int used = 0;
            int coloured = 0;
            for (VertexSet q = clique; q; q &= q - 1) {
                assign(lowest(q), used++);
                ++coloured;
            }
            search(coloured, used);
        }
        OracleResult r;
        r.nodes = nodes_;
        r.exact = !exhausted_;
        r.lower = exhausted_ ? lower_ : best_;
        r.upper = best_;
        return r;
    }

private:
    int pick_vertex() const {
        int best = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (colour_[v] >= 0) continue;
            const int sat = std::popcount(forbidden_[v]);
            int deg = 0;
            for (VertexSet q = nb_[v]; q; q &= q - 1)
                if (colour_[lowest(q)] < 0) ++deg;
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    }

    // forbidden_ is recomputed from neighbours, so unassign needs no undo log
    void assign(int v, int c) {
        colour_[v] = c;
        for (VertexSet q = nb_[v]; q; q &= q - 1) forbidden_[lowest(q)] |= VertexSet{1} << c;
    }
    void unassign(int v) {
        colour_[v] = -1;
        for (VertexSet q = nb_[v]; q; q &= q - 1) {
            const int w = lowest(q);
            VertexSet f = 0;
            for (VertexSet r = nb_[w]; r; r &= r - 1) {
                const int c = colour_[lowest(r)];
                if (c >= 0) f |= VertexSet{1} << c;
            }
            forbidden_[w] = f;
        }
    }

    int greedy_upper() {
        std::vector<int> saved = colour_;
        std::vector<VertexSet> saved_f = forbidden_;
        int used = 0;
        for (int k = 0; k < n_; ++k) {
            const int v = pick_vertex();
            const int c = std::countr_one(forbidden_[v]);
            assign(v, c);
            used = std::max(used, c + 1);
        }
        colour_ = std::move(saved);
        forbidden_ = std::move(saved_f);
        return used;
    }

    void search(int coloured, int used) {
        if (exhausted_ || best_ == lower_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (coloured == n_) {
            best_ = used;
            return;
        }
        const int v = pick_vertex();
        for (int c = 0; c <= used && c < best_ - 1; ++c) {
            if (forbidden_[v] & (VertexSet{1} << c)) continue;
            assign(v, c);
            search(coloured + 1, std::max(used, c + 1));
            unassign(v);
            if (exhausted_ || best_ == lower_) return;
        }
    }

    int n_;
    std::vector<VertexSet> nb_;
    long long budget_;
    std::vector<int> colour_;
    std::vector<VertexSet> forbidden_;
    long long nodes_ = 0;
    bool exhausted_ = false;
    int lower_ = 0;
    int best_ = 0;
};

} // namespace detail

/// Exact chromatic number; an exhausted node budget yields an inconclusive
/// result carrying the best known [lower, upper] interval.
inline OracleResult chromatic_number(const Graph& g, long long budget = kDefaultNodeBudget) {
    detail::require_exact_order(g);
    if (budget <= 0) throw ValidationError("node budget must be positive");
    const auto clique = max_clique(g, budget);
    detail::DsaturColouring dsatur(g, budget);
    auto r = dsatur.run(clique.witness, clique.size.lower);
    r.nodes += clique.size.nodes;
    return r;
}

/// All maximal independent sets, via pivoting Bron-Kerbosch on the
/// complement's cliques. Sets are returned sorted ascending as bitmasks.
inline std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
    detail::require_exact_order(g);
    const int n = g.order();
    const auto nb = detail::neighbor_masks(g);
    const VertexSet all = detail::all_vertices(n);
    std::vector<VertexSet> cnb(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) cnb[v] = all & ~nb[v] & ~(VertexSet{1} << v);

    std::vector<VertexSet> out;
    auto recurse = [&](auto&& self, VertexSet r, VertexSet p, VertexSet x) -> void {
        if (p == 0 && x == 0) {
            out.push_back(r);
            return;
        }
        int pivot = -1, best = -1;
        for (VertexSet q = p | x; q; q &= q - 1) {
            const int u = detail::lowest(q);
            const int c = std::popcount(p & cnb[u]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        for (VertexSet q = p & ~cnb[pivot]; q; q &= q - 1) {
            const int v = detail::lowest(q);
            const VertexSet bit = VertexSet{1} << v;
            self(self, r | bit, p & cnb[v], x & cnb[v]);
            p &= ~bit;
            x |= bit;
        }
    };
    if (n > 0) recurse(recurse, 0, all, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Optimal solution of the covering LP and its dual, both exact.
struct FractionalColouring {
    Rational value;
    std::vector<VertexSet> sets;           ///< maximal independent sets (LP columns)
    std::vector<Rational> set_weights;     ///< primal y_S
    std::vector<Rational> vertex_weights;  ///< dual fractional clique z_v
};

/// Solves max sum z_v s.t. sum_{v in S} z_v <= 1 for every independent set S,
/// z >= 0, by dictionary simplex with Bland's rule in exact rational
/// arithmetic. The covering LP min sum y_S s.t. sum_{S containing v} y_S >= 1
/// is its dual, read off the final reduced costs of the slacks.
inline FractionalColouring solve_fractional_colouring(int n, const std::vector<VertexSet>& sets) {
    const std::size_t m = sets.size();
    const std::size_t nn = static_cast<std::size_t>(n);
    // dictionary: x_B[i] = b[i] - sum_j a[i][j] x_N[j];  z = z0 + sum_j c[j] x_N[j]
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(nn));
    std::vector<Rational> b(m, Rational(1)), c(nn, Rational(1));
    Rational z0(0);
    std::vector<std::size_t> basic(m), nonbasic(nn);
    for (std::size_t i = 0; i < m; ++i) {
        basic[i] = nn + i;
        for (std::size_t j = 0; j < nn; ++j)
            if (sets[i] & (VertexSet{1} << j)) a[i][j] = 1;
    }
    std::iota(nonbasic.begin(), nonbasic.end(), std::size_t{0});

    while (true) {
        std::size_t enter = nn;
        for (std::size_t j = 0; j < nn; ++j)
            if (c[j] > 0 && (enter == nn || nonbasic[j] < nonbasic[enter])) enter = j;
        if (enter == nn) break;
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][enter] <= 0) continue;
            Rational ratio = b[i] / a[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[leave])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leave == m) throw InconsistencyError("fractional colouring LP unbounded");

        const Rational pivot = a[leave][enter];
        auto& row = a[leave];
        b[leave] /= pivot;
        for (std::size_t j = 0; j < nn; ++j)
            row[j] = (j == enter) ? Rational(1) / pivot : row[j] / pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || a[i][enter] == 0) continue;
            const Rational f = a[i][enter];
            b[i] -= f * b[leave];
            for (std::size_t j = 0; j < nn; ++j)
                if (j == enter) a[i][j] = -f * row[j];
                else a[i][j] -= f * row[j];
        }
        const Rational ce = c[enter];
        z0 += ce * b[leave];
        for (std::size_t j = 0; j < nn; ++j) {
            if (j == enter) c[j] = -ce * row[j];
            else c[j] -= ce * row[j];
        }
        std::swap(basic[leave], nonbasic[enter]);
    }

    FractionalColouring out;
    out.value = z0;
    out.sets = sets;
    out.set_weights.assign(m, Rational(0));
    out.vertex_weights.assign(nn, Rational(0));
    for (std::size_t j = 0; j < nn; ++j)
        if (nonbasic[j] >= nn) out.set_weights[nonbasic[j] - nn] = -c[j];
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < nn) out.vertex_weights[basic[i]] = b[i];
    return out;
}

/// Checks primal and dual feasibility and equal objectives, exactly.
inline bool certifies_optimum(int n, const FractionalColouring& f) {
    Rational primal(0), dual(0);
    for (const auto& y : f.set_weights) {
        if (y < 0) return false;
        primal += y;
    }
    for (const auto& z : f.vertex_weights) {
        if (z < 0) return false;
        dual += z;
    }
    for (int v = 0; v < n; ++v) {
        Rational cover(0);
        for (std::size_t i = 0; i < f.sets.size(); ++i)
            if (f.sets[i] & (VertexSet{1} << v)) cover += f.set_weights[i];
        if (cover < 1) return false;
    }
    for (VertexSet s : f.sets) {
        Rational load(0);
        for (int v = 0; v < n; ++v)
            if (s & (VertexSet{1} << v)) load += f.vertex_weights[v];
        if (load > 1) return false;
    }
    return primal == dual && primal == f.value;
}

/// Exact chi_f(g) as a rational; refuses graphs with more than 20 vertices.
inline FractionalColouring fractional_chromatic_number(const Graph& g) {
    if (g.order() > kMaxFractionalOrder)
        throw ValidationError("fractional chromatic number supports n <= " +
                              std::to_string(kMaxFractionalOrder) + ", got " + std::to_string(g.order()));
    auto f = solve_fractional_colouring(g.order(), maximal_independent_sets(g));
    if (!certifies_optimum(g.order(), f)) throw InconsistencyError("fractional colouring LP failed its duality check");
    return f;
}

struct ExactLimits {
    long long node_budget = kDefaultNodeBudget;
    int max_n_fractional = kMaxFractionalOrder;
};

struct ExactParams {
    OracleResult chi;
    OracleResult omega;
    OracleResult alpha;
    std::optional<Rational> chi_f;  ///< absent when n exceeds the LP limit
    ExactLimits limits;
};

inline ExactParams compute_exact(const Graph& g, ExactLimits limits = {}) {
    ExactParams p;
    p.limits = limits;
    p.chi = chromatic_number(g, limits.node_budget);
    const auto ci = clique_and_independence(g, limits.node_budget);
    p.omega = ci.omega;
    p.alpha = ci.alpha;
    if (g.order() <= std::min(limits.max_n_fractional, kMaxFractionalOrder))
        p.chi_f = fractional_chromatic_number(g).value;
    return p;
}

} // namespace orthorank

#endif // ORTHORANK_EXACT_HPP
