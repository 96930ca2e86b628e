#ifndef ORTHORANK_BOUNDS_HPP
#define ORTHORANK_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "orthorank/graph.hpp"
#include "orthorank/rational.hpp"
#include "orthorank/spectral.hpp"

namespace orthorank {

/// The parameter a bound provably lower-bounds.
///  - chi_vect_le_xi: eigenvalue bounds, valid for chi_vect and hence xi
///  - xi: the inertial bound (not known to bound chi_vect)
///  - xi_f: the weaker inertial bound, valid for the projective rank
enum class Target { chi_vect_le_xi, xi, xi_f };

inline std::string_view target_name(Target t) {
    switch (t) {
    case Target::chi_vect_le_xi: return "chi_vect<=xi";
    case Target::xi: return "xi";
    case Target::xi_f: return "xi_f";
    }
    return "?";
}

enum class BoundStatus { ok, degenerate, undefined };

inline std::string_view status_name(BoundStatus s) {
    switch (s) {
    case BoundStatus::ok: return "ok";
    case BoundStatus::degenerate: return "degenerate";
    case BoundStatus::undefined: return "undefined";
    }
    return "?";
}

struct BoundValue {
    double value = 1.0;
    BoundStatus status = BoundStatus::ok;
    Target target = Target::chi_vect_le_xi;
    std::string matrix;

    bool degenerate() const noexcept { return status == BoundStatus::degenerate; }
};

struct RationalBound {
    Rational value{1};
    BoundStatus status = BoundStatus::ok;
    Target target = Target::xi;

    bool degenerate() const noexcept { return status == BoundStatus::degenerate; }
};

namespace detail {
inline void require_matrix(const Spectrum& s, MatrixType t, std::string_view who) {
    if (s.matrix != t)
        throw ValidationError(std::string(who) + " needs a " + std::string(matrix_type_name(t)) +
                              " spectrum, got " + std::string(matrix_type_name(s.matrix)));
}

inline bool has_negative(const Spectrum& s) { return !s.eigenvalues.empty() && s.smallest() < -s.zero_tolerance; }
} // namespace detail

/// 1 + mu_1 / |mu_n|. Accepts adjacency or weighted-adjacency spectra.
inline BoundValue hoffman_bound(const Spectrum& s) {
    if (s.matrix != MatrixType::adjacency && s.matrix != MatrixType::weighted_adjacency)
        throw ValidationError("hoffman_bound needs an adjacency spectrum");
    BoundValue b{1.0, BoundStatus::ok, Target::chi_vect_le_xi, std::string(matrix_type_name(s.matrix))};
    if (!detail::has_negative(s)) {
        b.status = BoundStatus::degenerate;
        return b;
    }
    b.value = 1.0 + s.largest() / std::abs(s.smallest());
    return b;
}

/// 1 + 2m / (2m - n delta_n) with delta_n the least signless-Laplacian eigenvalue.
inline BoundValue lima_bound(const Graph& g, const Spectrum& signless) {
    detail::require_matrix(signless, MatrixType::signless_laplacian, "lima_bound");
    BoundValue b{1.0, BoundStatus::ok, Target::chi_vect_le_xi, "signless-laplacian"};
    if (g.size() == 0) {
        b.status = BoundStatus::degenerate;
        return b;
    }
    const double two_m = 2.0 * g.size();
    const double denom = two_m - g.order() * signless.smallest();
    if (!(denom > 0.0)) throw BoundUndefined("lima bound undefined: 2m - n*delta_n <= 0");
    b.value = 1.0 + two_m / denom;
    return b;
}

/// 1 + mu_1 / (mu_1 - delta_1 + theta_1).
inline BoundValue kolotilina_bound(const Spectrum& adjacency, const Spectrum& laplacian, const Spectrum& signless) {
    detail::require_matrix(adjacency, MatrixType::adjacency, "kolotilina_bound");
    detail::require_matrix(laplacian, MatrixType::laplacian, "kolotilina_bound");
    detail::require_matrix(signless, MatrixType::signless_laplacian, "kolotilina_bound");
    BoundValue b{1.0, BoundStatus::ok, Target::chi_vect_le_xi, "adjacency+laplacian+signless-laplacian"};
    if (!detail::has_negative(adjacency)) {
        b.status = BoundStatus::degenerate;
        return b;
    }
    const double mu1 = adjacency.largest();
    const double denom = mu1 - signless.largest() + laplacian.largest();
    if (!(denom > 0.0)) throw BoundUndefined("kolotilina bound undefined: mu_1 - delta_1 + theta_1 <= 0");
    b.value = 1.0 + mu1 / denom;
    return b;
}

/// 1 + l(A) / (l(A) - l(E + A) + l(E - A)) with l = largest eigenvalue and E a
/// real diagonal given by its entries. E = 0 gives the Hoffman bound and E = D
/// the Kolotilina bound.
inline BoundValue generalized_bound(const Graph& g, std::span<const double> diagonal) {
    if (diagonal.size() != static_cast<std::size_t>(g.order()))
        throw ValidationError("diagonal E must have one entry per vertex");
    BoundValue b{1.0, BoundStatus::ok, Target::chi_vect_le_xi, "E+A,E-A"};
    if (g.size() == 0) {
        b.status = BoundStatus::degenerate;
        return b;
    }
    const RealMatrix a = build_real_matrix(g, MatrixKind::adjacency());
    RealMatrix plus = a, minus = a * -1.0;
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        plus(i, i) += diagonal[i];
        minus(i, i) += diagonal[i];
    }
    const double la = eigenvalues(a).front();
    const double denom = la - eigenvalues(plus).front() + eigenvalues(minus).front();
    if (!(denom > 0.0)) throw BoundUndefined("generalized bound undefined for this E");
    b.value = 1.0 + la / denom;
    return b;
}

inline std::vector<double> degree_diagonal(const Graph& g) {
    std::vector<double> d(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) d[v] = g.degree(v);
    return d;
}

/// 1 + max(n+/n-, n-/n+), exact.
inline RationalBound inertial_bound(const Spectrum& s) {
    detail::require_matrix(s, MatrixType::adjacency, "inertial_bound");
    const auto& in = s.inertia;
    RationalBound b{Rational(1), BoundStatus::ok, Target::xi};
    if (in.positive == 0 || in.negative == 0) {
        b.status = BoundStatus::degenerate;
        return b;
    }
    const Rational a(in.positive, in.negative), c(in.negative, in.positive);
    b.value = 1 + (a > c ? a : c);
    return b;
}

/// 1 + max(n+/(n- + n0), n-/(n+ + n0)), exact.
inline RationalBound weaker_inertial_bound(const Spectrum& s) {
    detail::require_matrix(s, MatrixType::adjacency, "weaker_inertial_bound");
    const auto& in = s.inertia;
    if (in.order() == 0) throw ValidationError("weaker_inertial_bound needs a non-empty graph");
    RationalBound b{Rational(1), BoundStatus::ok, Target::xi_f};
    if (in.positive == 0 || in.negative == 0) b.status = BoundStatus::degenerate;
    Rational best(0);
    if (in.negative + in.zero > 0) best = std::max(best, Rational(in.positive, in.negative + in.zero));
    if (in.positive + in.zero > 0) best = std::max(best, Rational(in.negative, in.positive + in.zero));
    b.value = 1 + best;
    return b;
}

// ---------------------------------------------------------------------------
// Weighted Hoffman search

/// 1 + mu_1(W o A) / |mu_n(W o A)|; 1 when W o A has no negative eigenvalue.
inline double weighted_hoffman_value(const Graph& g, const EdgeWeights& w) {
    const auto s = spectrum(g, MatrixKind::weighted(w));
    return hoffman_bound(s).value;
}

struct WeightedHoffmanOptions {
    int restarts = 4;
    bool complex_weights = false;
};

struct WeightedHoffman {
    double value = 1.0;
    EdgeWeights weights;
};

/// splitmix64 step; used to derive independent per-task seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Local search over edge weights for the largest Hoffman ratio of W o A.
/// Restart 0 starts from the all-ones weights; the others from seeded random
/// positive weights. Each step multiplies one weight by exp(sigma * N(0,1))
/// (and, for complex weights, rotates its phase) and keeps the move only when
/// the objective strictly improves. Deterministic in (seed, iters, options).
inline WeightedHoffman optimize_weighted_hoffman(const Graph& g, std::uint64_t seed, int iters,
                                                 WeightedHoffmanOptions options = {}) {
    WeightedHoffman best{1.0, EdgeWeights::ones(g)};
    if (g.size() == 0) return best;
    best.value = weighted_hoffman_value(g, best.weights);

    const auto& edges = g.edges();
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.25, 1.75);
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);

        EdgeWeights w = EdgeWeights::ones(g);
        if (r > 0)
            for (auto [v, x] : edges) w.set(v, x, unif(rng));
        double value = weighted_hoffman_value(g, w);
        double sigma = 0.5;
        for (int it = 0; it < iters; ++it) {
            const auto [v, x] = edges[pick(rng)];
            EdgeWeights trial = w;
            cplx factor = std::exp(sigma * gauss(rng));
            if (options.complex_weights) factor *= std::polar(1.0, 0.5 * sigma * gauss(rng));
            trial.set(v, x, w.at(v, x) * factor);
            const double tv = weighted_hoffman_value(g, trial);
            if (tv > value) {
                value = tv;
                w = std::move(trial);
                sigma = std::min(1.0, sigma * 1.5);
            } else {
                sigma = std::max(1e-4, sigma * 0.97);
            }
        }
        // renormalize to max |w| = 1 (objective is scale invariant)
        double mx = 0.0;
        for (const auto& [e, val] : w.values()) mx = std::max(mx, std::abs(val));
        if (mx > 0.0) w = w.scaled(1.0 / mx);
        value = weighted_hoffman_value(g, w);
        if (value > best.value) best = {value, std::move(w)};
    }
    return best;
}

// ---------------------------------------------------------------------------
// Battery

struct GraphSpectra {
    Spectrum adjacency;
    Spectrum laplacian;
    Spectrum signless_laplacian;
};

inline GraphSpectra compute_spectra(const Graph& g, std::optional<double> tol = std::nullopt) {
    return {inertia(g, tol), spectrum(g, MatrixKind::laplacian(), tol),
            spectrum(g, MatrixKind::signless_laplacian(), tol)};
}

struct BoundSet {
    BoundValue hoffman;
    BoundValue lima;
    BoundValue kolotilina;
    RationalBound inertial;
    RationalBound weaker_inertial;
    std::map<std::string, BoundValue> generalized;  ///< keyed by E description
    std::optional<WeightedHoffman> weighted_hoffman;
};

namespace detail {
template <typename F>
BoundValue guarded(F&& f, std::string matrix) {
    try {
        return f();
    } catch (const BoundUndefined&) {
        return BoundValue{1.0, BoundStatus::undefined, Target::chi_vect_le_xi, std::move(matrix)};
    }
}
} // namespace detail

/// All closed-form bounds plus the E = 0 and E = D members of the generalized
/// family. Undefined denominators are flagged instead of thrown.
inline BoundSet evaluate_bounds(const Graph& g, const GraphSpectra& s) {
    BoundSet b;
    b.hoffman = hoffman_bound(s.adjacency);
    b.lima = detail::guarded([&] { return lima_bound(g, s.signless_laplacian); }, "signless-laplacian");
    b.kolotilina = detail::guarded([&] { return kolotilina_bound(s.adjacency, s.laplacian, s.signless_laplacian); },
                                   "adjacency+laplacian+signless-laplacian");
    b.inertial = inertial_bound(s.adjacency);
    b.weaker_inertial = weaker_inertial_bound(s.adjacency);
    const std::vector<double> zero(static_cast<std::size_t>(g.order()), 0.0);
    const auto deg = degree_diagonal(g);
    b.generalized["E=0"] = detail::guarded([&] { return generalized_bound(g, zero); }, "E+A,E-A");
    b.generalized["E=D"] = detail::guarded([&] { return generalized_bound(g, deg); }, "E+A,E-A");
    return b;
}

} // namespace orthorank

#endif // ORTHORANK_BOUNDS_HPP
