#ifndef ORTHORANK_REPRESENTATION_HPP
#define ORTHORANK_REPRESENTATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orthorank/bounds.hpp"
#include "orthorank/graph.hpp"
#include "orthorank/linalg.hpp"
#include "orthorank/rational.hpp"
#include "orthorank/spectral.hpp"

namespace orthorank {

using Vector = std::vector<cplx>;

/// Nonzero vectors x_v in C^d with x_v^dagger x_w = 0 on edges (up to `residual`).
struct OrthoRepresentation {
    int dimension = 0;
    std::vector<Vector> vectors;
    double residual = 0.0;   ///< max over edges of |x_v^dagger x_w|
    bool normalized = false; ///< every entry has modulus d^{-1/2}

    friend bool operator==(const OrthoRepresentation&, const OrthoRepresentation&) = default;
};

/// Rank-r orthogonal projectors P_v in C^{d x d} with P_v P_w = 0 on edges.
struct ProjectorRepresentation {
    int dimension = 0;
    int rank = 0;
    std::vector<ComplexMatrix> projectors;

    Rational ratio() const { return Rational(dimension, rank); }

    friend bool operator==(const ProjectorRepresentation&, const ProjectorRepresentation&) = default;
};

struct SearchConfig {
    int restarts = 32;
    int max_iters = 2000;
    std::uint64_t seed = 0;
    double success_tolerance = 1e-9;
    int min_dimension = 1;
    int max_dimension = 0;  ///< 0 means n

    void validate() const {
        if (restarts < 1 || max_iters < 1) throw ValidationError("restarts and max_iters must be positive");
        if (!(success_tolerance > 0.0)) throw ValidationError("success tolerance must be positive");
        if (min_dimension < 1) throw ValidationError("dimension range must start at 1 or above");
        if (max_dimension != 0 && max_dimension < min_dimension) throw ValidationError("empty dimension range");
    }
};

/// Certificates are rejected above this residual.
inline constexpr double kVerifyTolerance = 1e-8;

/// Searcher-side residual: max over edges of |x_v^dagger x_w|.
inline double edge_residual(const Graph& g, const std::vector<Vector>& x) {
    double r = 0.0;
    for (auto [v, w] : g.edges())
        r = std::max(r, std::abs(inner<cplx>(x[v], x[w])));
    return r;
}

struct Verification {
    bool valid = false;
    double residual = 0.0;
    std::vector<std::string> diagnostics;
};

/// Independent check of an orthogonal representation. Inner products are
/// accumulated from split real and imaginary parts in reverse index order,
/// not through the searcher's complex arithmetic.
inline Verification verify_representation(const Graph& g, const OrthoRepresentation& rep,
                                          double tolerance = kVerifyTolerance) {
    Verification out;
    const auto n = static_cast<std::size_t>(g.order());
    if (rep.dimension < 1) out.diagnostics.push_back("dimension must be positive");
    if (rep.vectors.size() != n) {
        out.diagnostics.push_back("expected " + std::to_string(n) + " vectors, got " + std::to_string(rep.vectors.size()));
        return out;
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto& x = rep.vectors[v];
        if (x.size() != static_cast<std::size_t>(rep.dimension)) {
            out.diagnostics.push_back("vector " + std::to_string(v) + " has wrong length");
            return out;
        }
        double sq = 0.0;
        for (std::size_t i = x.size(); i-- > 0;) sq += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        if (!(sq > 0.0)) out.diagnostics.push_back("vector " + std::to_string(v) + " is zero");
        if (rep.normalized) {
            const double target = 1.0 / std::sqrt(static_cast<double>(rep.dimension));
            for (const auto& e : x)
                if (std::abs(std::abs(e) - target) > 1e-8) {
                    out.diagnostics.push_back("vector " + std::to_string(v) + " violates the equal-modulus constraint");
                    break;
                }
        }
    }
    for (auto [v, w] : g.edges()) {
        const auto& a = rep.vectors[v];
        const auto& b = rep.vectors[w];
        double re = 0.0, im = 0.0;
        for (std::size_t i = a.size(); i-- > 0;) {
            re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
            im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
        }
        out.residual = std::max(out.residual, std::hypot(re, im));
    }
    if (!(out.residual < tolerance))
        out.diagnostics.push_back("edge residual " + std::to_string(out.residual) + " exceeds tolerance");
    out.valid = out.diagnostics.empty();
    return out;
}

namespace detail {
template <typename Rng>
Vector random_unit_vector(int d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x(static_cast<std::size_t>(d));
    for (auto& e : x) e = cplx(gauss(rng), gauss(rng));
    const double nrm = norm2<cplx>(x);
    for (auto& e : x) e /= nrm;
    return x;
}

inline double objective(const Graph& g, const std::vector<Vector>& x) {
    double f = 0.0;
    for (auto [v, w] : g.edges()) f += std::norm(inner<cplx>(x[v], x[w]));
    return f;
}

// Sweeps after first meeting the tolerance, to drive the residual further down.
inline constexpr int kPolishSweeps = 25;
// Restart once the objective improves by less than this fraction over a window.
inline constexpr double kStallFraction = 1e-9;
inline constexpr int kStallWindow = 20;
} // namespace detail

/// Alternating minimization of f(X) = sum_{vw in E} |x_v^dagger x_w|^2: each
/// x_v in turn becomes a unit eigenvector for the least eigenvalue of
/// sum_{w ~ v} x_w x_w^dagger, which minimizes f over x_v exactly. That vector
/// is taken as the least right singular vector of the stacked x_w^dagger. Restarts
/// from seeded complex Gaussians. A nullopt result makes no claim about xi.
///
/// If `trace` is non-null it receives f after every sweep of the first restart.
inline std::optional<OrthoRepresentation> search_ortho_rep(const Graph& g, int d, const SearchConfig& cfg,
                                                           std::vector<double>* trace = nullptr) {
    cfg.validate();
    if (d < 1) throw ValidationError("dimension must be positive");
    const int n = g.order();
    const auto dim = static_cast<std::size_t>(d);
    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(d)), static_cast<std::uint64_t>(r)));
        std::vector<Vector> x(static_cast<std::size_t>(n));
        for (auto& xv : x) xv = detail::random_unit_vector(d, rng);

        double f = detail::objective(g, x);
        std::vector<double> history{f};
        if (trace && r == 0) trace->push_back(f);
        std::optional<std::vector<Vector>> best;
        double best_res = cfg.success_tolerance;
        int polish = 0;
        for (int it = 0; it < cfg.max_iters; ++it) {
            for (int v = 0; v < n; ++v) {
                if (g.degree(v) == 0) continue;
                // rows x_w^dagger, so |N x|^2 = x^dagger (sum_w x_w x_w^dagger) x
                const auto& nb = g.neighbors(v);
                ComplexMatrix rows(nb.size(), dim);
                for (std::size_t k = 0; k < nb.size(); ++k)
                    for (std::size_t j = 0; j < dim; ++j) rows(k, j) = std::conj(x[nb[k]][j]);
                x[v] = smallest_right_singular_vector(std::move(rows));
            }
            f = detail::objective(g, x);
            history.push_back(f);
            if (trace && r == 0) trace->push_back(f);

            const double res = edge_residual(g, x);
            if (res < best_res) {
                best_res = res;
                best = x;
            }
            if (best) {
                if (++polish > detail::kPolishSweeps || res == 0.0) break;
                continue;
            }
            const auto h = history.size();
            if (h > detail::kStallWindow &&
                history[h - 1 - detail::kStallWindow] - f <= detail::kStallFraction * history[h - 1 - detail::kStallWindow])
                break;
        }
        if (best) return OrthoRepresentation{d, std::move(*best), best_res, false};
    }
    return std::nullopt;
}

/// Searches unit vectors whose entries all have modulus d^{-1/2}, i.e.
/// x_v = exp(i theta_v) / sqrt(d), by gradient descent on the phases with a
/// backtracking line search. Success certifies xi'(g) <= d.
inline std::optional<OrthoRepresentation> search_normalized_rep(const Graph& g, int d, const SearchConfig& cfg) {
    cfg.validate();
    if (d < 1) throw ValidationError("dimension must be positive");
    const int n = g.order();
    const auto dim = static_cast<std::size_t>(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));

    auto vectors_of = [&](const std::vector<double>& theta) {
        std::vector<Vector> x(static_cast<std::size_t>(n), Vector(dim));
        for (int v = 0; v < n; ++v)
            for (std::size_t j = 0; j < dim; ++j) x[v][j] = std::polar(scale, theta[v * dim + j]);
        return x;
    };

    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(derive_seed(cfg.seed ^ 0x6e6f726dULL, static_cast<std::uint64_t>(d)),
                                        static_cast<std::uint64_t>(r)));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::vector<double> theta(static_cast<std::size_t>(n) * dim);
        for (auto& t : theta) t = angle(rng);

        auto x = vectors_of(theta);
        double f = detail::objective(g, x);
        double step = 1.0;
        std::vector<double> history{f};
        std::optional<std::vector<Vector>> best;
        double best_res = cfg.success_tolerance;
        int polish = 0;
        for (int it = 0; it < cfg.max_iters; ++it) {
            // df/dtheta_{v,j} = 2 Re(conj(s) ds/dtheta) with s = x_v^dagger x_w
            std::vector<double> grad(theta.size(), 0.0);
            for (auto [v, w] : g.edges()) {
                const cplx s = inner<cplx>(x[v], x[w]);
                for (std::size_t j = 0; j < dim; ++j) {
                    const cplx term = std::conj(x[v][j]) * x[w][j];
                    const double gj = 2.0 * (std::conj(s) * cplx(0.0, 1.0) * term).real();
                    grad[w * dim + j] += gj;
                    grad[v * dim + j] -= gj;
                }
            }
            double gnorm2 = 0.0;
            for (double gval : grad) gnorm2 += gval * gval;
            if (gnorm2 == 0.0) break;

            std::vector<double> trial(theta.size());
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t k = 0; k < theta.size(); ++k) trial[k] = theta[k] - step * grad[k];
                auto xt = vectors_of(trial);
                const double ft = detail::objective(g, xt);
                if (ft <= f - 1e-4 * step * gnorm2) {
                    theta.swap(trial);
                    x = std::move(xt);
                    f = ft;
                    step *= 1.5;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
            history.push_back(f);

            const double res = edge_residual(g, x);
            if (res < best_res) {
                best_res = res;
                best = x;
            }
            if (best) {
                if (++polish > detail::kPolishSweeps || res == 0.0) break;
                continue;
            }
            const auto h = history.size();
            if (h > 4 * detail::kStallWindow &&
                history[h - 1 - 4 * detail::kStallWindow] - f <=
                    detail::kStallFraction * history[h - 1 - 4 * detail::kStallWindow])
                break;
        }
        if (best) return OrthoRepresentation{d, std::move(*best), best_res, true};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Interval for xi

struct XiInterval {
    double lower = 1.0;                 ///< max of the lower bounds
    std::optional<Rational> lower_exact; ///< set when the inertial bound attains the max
    std::string lower_source;
    int lower_ceiling = 1;
    std::optional<int> upper;            ///< smallest dimension with a certificate
    std::optional<OrthoRepresentation> certificate;
};

/// The lower half of xi_interval: no search, `upper` stays empty.
inline XiInterval xi_lower_bound(const BoundSet& bounds) {
    XiInterval out;
    out.lower = to_double(bounds.inertial.value);
    out.lower_exact = bounds.inertial.value;
    out.lower_source = "inertial";
    for (const auto* b : {&bounds.hoffman, &bounds.lima, &bounds.kolotilina}) {
        if (b->status != BoundStatus::ok) continue;
        if (b->value > out.lower + 1e-9) {
            out.lower = b->value;
            out.lower_exact.reset();
            out.lower_source = b == &bounds.hoffman ? "hoffman" : b == &bounds.lima ? "lima" : "kolotilina";
        }
    }
    out.lower_ceiling = out.lower_exact ? static_cast<int>(ceil(*out.lower_exact))
                                        : static_cast<int>(std::ceil(out.lower - 1e-9));
    return out;
}

/// Largest of the inertial, Hoffman, Lima and Kolotilina bounds, and the
/// smallest dimension in the configured range where the search succeeds.
/// A certificate below the lower bound throws InconsistencyError.
inline XiInterval xi_interval(const Graph& g, const BoundSet& bounds, const SearchConfig& cfg) {
    cfg.validate();
    XiInterval out = xi_lower_bound(bounds);
    const int hi = cfg.max_dimension == 0 ? g.order() : cfg.max_dimension;
    for (int d = cfg.min_dimension; d <= hi; ++d) {
        auto rep = search_ortho_rep(g, d, cfg);
        if (!rep) continue;
        if (!verify_representation(g, *rep).valid)
            throw InconsistencyError("search returned a certificate that fails verification");
        if (d < out.lower_ceiling)
            throw InconsistencyError("certificate in dimension " + std::to_string(d) +
                                     " is below the lower bound " + std::to_string(out.lower));
        out.upper = d;
        out.certificate = std::move(rep);
        break;
    }
    return out;
}

inline XiInterval xi_interval(const Graph& g, const SearchConfig& cfg) {
    return xi_interval(g, evaluate_bounds(g, compute_spectra(g)), cfg);
}

// ---------------------------------------------------------------------------
// First-entry normalization and the diagonal conversion identity

inline constexpr int kNormalizeRetries = 64;

/// Rotates all vectors by one seeded Haar unitary until every first entry has
/// modulus above 1e-6, then rescales each vector so its first entry is 1.
inline OrthoRepresentation normalize_first_entries(const Graph& g, const OrthoRepresentation& rep, std::uint64_t seed) {
    if (!(rep.residual < 1e-9)) throw ValidationError("normalize_first_entries needs a residual below 1e-9");
    const auto d = static_cast<std::size_t>(rep.dimension);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kNormalizeRetries; ++attempt) {
        const ComplexMatrix u = attempt == 0 && std::all_of(rep.vectors.begin(), rep.vectors.end(),
                                                            [](const Vector& x) { return std::abs(x[0]) > 1e-6; })
                                    ? ComplexMatrix::identity(d)
                                    : random_unitary(d, rng);
        std::vector<Vector> y(rep.vectors.size(), Vector(d));
        bool ok = true;
        for (std::size_t v = 0; v < rep.vectors.size() && ok; ++v) {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < d; ++k) y[v][i] += u(i, k) * rep.vectors[v][k];
            ok = std::abs(y[v][0]) > 1e-6;
        }
        if (!ok) continue;
        for (auto& yv : y) {
            const cplx first = yv[0];
            for (auto& e : yv) e /= first;
            yv[0] = 1.0;
        }
        OrthoRepresentation out{rep.dimension, std::move(y), 0.0, false};
        out.residual = edge_residual(g, out.vectors);
        return out;
    }
    throw std::runtime_error("normalize_first_entries: no suitable unitary after " +
                             std::to_string(kNormalizeRetries) + " attempts");
}

/// || sum_{i >= 2} D_i^dagger A D_i + A ||_max with D_i = diag(x_v^i); zero for
/// a valid representation whose first entries are all 1.
inline double verify_conversion_identity(const Graph& g, const OrthoRepresentation& rep) {
    const auto n = static_cast<std::size_t>(g.order());
    if (rep.vectors.size() != n) throw ValidationError("representation size does not match graph");
    for (const auto& x : rep.vectors)
        if (x.empty() || std::abs(x[0] - cplx(1.0)) > 1e-12)
            throw ValidationError("conversion identity needs every first entry equal to 1");
    const ComplexMatrix a = build_matrix(g, MatrixKind::adjacency());
    ComplexMatrix sum = a;
    for (int i = 1; i < rep.dimension; ++i) {
        ComplexMatrix di(n, n);
        for (std::size_t v = 0; v < n; ++v) di(v, v) = rep.vectors[v][i];
        sum += di.adjoint() * a * di;
    }
    return max_abs(sum);
}

// ---------------------------------------------------------------------------
// d/r representations

struct DrReport {
    bool valid = false;
    Rational ratio{0};
    double hermitian_residual = 0.0;
    double idempotent_residual = 0.0;
    double orthogonality_residual = 0.0;  ///< || P (A (x) I_d) P ||_max
    int total_rank = 0;                   ///< rank of the block-diagonal P
    std::vector<std::string> diagnostics;
};

/// Checks each P_v (Hermitian, idempotent, rank r) and the block-diagonal
/// projector P = sum_v e_v e_v^dagger (x) P_v: P (A (x) I_d) P = 0 and
/// rank(P) = n r. The (v, w) block of P (A (x) I_d) P is a_vw P_v P_w, so the
/// product is evaluated block by block.
inline DrReport verify_dr_representation(const Graph& g, const ProjectorRepresentation& rep) {
    const auto n = static_cast<std::size_t>(g.order());
    if (rep.dimension < 1 || rep.rank < 1) throw ValidationError("d and r must be positive");
    if (rep.projectors.size() != n)
        throw ValidationError("expected " + std::to_string(n) + " projectors, got " + std::to_string(rep.projectors.size()));
    const auto d = static_cast<std::size_t>(rep.dimension);
    for (const auto& p : rep.projectors)
        if (p.rows() != d || p.cols() != d) throw ValidationError("projector has wrong shape");

    DrReport out;
    out.ratio = rep.ratio();
    for (std::size_t v = 0; v < n; ++v) {
        const auto& p = rep.projectors[v];
        const double herm = hermitian_residual(p);
        const double idem = max_abs(p * p - p);
        const int rk = numerical_rank(p);
        out.hermitian_residual = std::max(out.hermitian_residual, herm);
        out.idempotent_residual = std::max(out.idempotent_residual, idem);
        out.total_rank += rk;
        const auto tag = "P_" + std::to_string(v);
        if (herm > 1e-10) out.diagnostics.push_back(tag + " is not Hermitian");
        if (idem > 1e-8) out.diagnostics.push_back(tag + " is not idempotent");
        if (rk != rep.rank)
            out.diagnostics.push_back(tag + " has rank " + std::to_string(rk) + ", expected " + std::to_string(rep.rank));
    }
    for (auto [v, w] : g.edges())
        out.orthogonality_residual = std::max(out.orthogonality_residual, max_abs(rep.projectors[v] * rep.projectors[w]));
    if (!(out.orthogonality_residual < 1e-8)) out.diagnostics.push_back("P (A (x) I_d) P is not zero");
    if (out.total_rank != static_cast<int>(n) * rep.rank)
        out.diagnostics.push_back("rank(P) = " + std::to_string(out.total_rank) + ", expected n*r = " +
                                  std::to_string(static_cast<int>(n) * rep.rank));
    out.valid = out.diagnostics.empty();
    return out;
}

/// (d - 1) n+ >= n- and (d - 1) n- >= n+, the inertial inequality at dimension d.
inline bool satisfies_inertial_inequality(int d, const Inertia& in) {
    const long long k = d - 1;
    return k * in.positive >= in.negative && k * in.negative >= in.positive;
}

/// d/r >= 1 + max(n+/(n- + n0), n-/(n+ + n0)); always holds for a valid certificate.
inline bool satisfies_projective_bound(const Rational& ratio, const Inertia& in) {
    Spectrum s;
    s.inertia = in;
    return ratio >= weaker_inertial_bound(s).value;
}

/// d/r >= 1 + max(n+/n-, n-/n+). Conjectured, not proven: a false result on a
/// valid certificate would be a counterexample.
inline bool satisfies_conjectured_bound(const Rational& ratio, const Inertia& in) {
    Spectrum s;
    s.inertia = in;
    return ratio >= inertial_bound(s).value;
}

// ---------------------------------------------------------------------------
// Hand-built certificates

inline ComplexMatrix coordinate_projector(std::size_t d, const std::vector<std::size_t>& coords) {
    ComplexMatrix p(d, d);
    for (auto i : coords) p(i, i) = 1.0;
    return p;
}

/// d/1 representation from a proper colouring with colours 0..d-1.
inline ProjectorRepresentation colouring_certificate(const Graph& g, const std::vector<int>& colour) {
    if (colour.size() != static_cast<std::size_t>(g.order())) throw ValidationError("colouring has wrong size");
    const int d = colour.empty() ? 1 : *std::max_element(colour.begin(), colour.end()) + 1;
    ProjectorRepresentation rep{d, 1, {}};
    for (int c : colour) rep.projectors.push_back(coordinate_projector(static_cast<std::size_t>(d), {static_cast<std::size_t>(c)}));
    return rep;
}

/// (2k+1)/k representation of the odd cycle C_{2k+1}: vertex v gets the
/// coordinates kv, kv+1, ..., kv+k-1 (mod 2k+1).
inline ProjectorRepresentation odd_cycle_certificate(int k) {
    if (k < 1) throw ValidationError("odd_cycle_certificate needs k >= 1");
    const int n = 2 * k + 1;
    ProjectorRepresentation rep{n, k, {}};
    for (int v = 0; v < n; ++v) {
        std::vector<std::size_t> coords;
        for (int i = 0; i < k; ++i) coords.push_back(static_cast<std::size_t>((k * v + i) % n));
        rep.projectors.push_back(coordinate_projector(static_cast<std::size_t>(n), coords));
    }
    return rep;
}

/// p/k representation of kneser(p,k): each k-subset projects onto its coordinates.
inline ProjectorRepresentation kneser_certificate(int p, int k) {
    validate(FamilySpec{Family::kneser, {p, k}});
    ProjectorRepresentation rep{p, k, {}};
    for (auto mask : kneser_subsets(p, k)) {
        std::vector<std::size_t> coords;
        for (int i = 0; i < p; ++i)
            if (mask >> i & 1) coords.push_back(static_cast<std::size_t>(i));
        rep.projectors.push_back(coordinate_projector(static_cast<std::size_t>(p), coords));
    }
    return rep;
}

/// The +-1 labels of orthogonality(n) scaled to unit length; normalized by construction.
inline OrthoRepresentation orthogonality_certificate(int len) {
    const Graph g = generate(FamilySpec{Family::orthogonality, {len}});
    const double s = 1.0 / std::sqrt(static_cast<double>(len));
    OrthoRepresentation rep{len, {}, 0.0, true};
    for (int v = 0; v < g.order(); ++v) {
        Vector x(static_cast<std::size_t>(len));
        for (int j = 0; j < len; ++j) x[j] = (v >> j & 1) ? -s : s;
        rep.vectors.push_back(std::move(x));
    }
    rep.residual = edge_residual(g, rep.vectors);
    return rep;
}

/// Rank-one projectors x x^dagger / |x|^2 of an orthogonal representation.
inline ProjectorRepresentation to_projectors(const OrthoRepresentation& rep) {
    ProjectorRepresentation out{rep.dimension, 1, {}};
    for (const auto& x : rep.vectors) {
        auto p = outer<cplx>(x, x);
        p *= cplx(1.0 / std::pow(norm2<cplx>(x), 2));
        out.projectors.push_back(std::move(p));
    }
    return out;
}

} // namespace orthorank

#endif // ORTHORANK_REPRESENTATION_HPP
