#ifndef ORTHORANK_SPECTRAL_HPP
#define ORTHORANK_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthorank/graph.hpp"
#include "orthorank/linalg.hpp"
#include "orthorank/rational.hpp"

namespace orthorank {

/// Hermitian edge weights. The stored value w belongs to the ordered pair
/// (v, w) with v < w; the (w, v) entry is its conjugate.
class EdgeWeights {
public:
    EdgeWeights() = default;

    /// All-ones weights on the edges of g.
    static EdgeWeights ones(const Graph& g) {
        EdgeWeights w;
        for (auto e : g.edges()) w.values_[e] = 1.0;
        return w;
    }

    void set(int v, int w, cplx value) {
        if (v > w) {
            std::swap(v, w);
            value = std::conj(value);
        }
        values_[{v, w}] = value;
    }

    /// Entry (v, w) of the weight matrix; zero off the support.
    cplx at(int v, int w) const {
        const bool flip = v > w;
        const auto it = values_.find(flip ? Edge{w, v} : Edge{v, w});
        if (it == values_.end()) return 0.0;
        return flip ? std::conj(it->second) : it->second;
    }

    const std::map<Edge, cplx>& values() const noexcept { return values_; }

    bool is_real() const {
        return std::all_of(values_.begin(), values_.end(),
                           [](const auto& kv) { return kv.second.imag() == 0.0; });
    }

    EdgeWeights scaled(double c) const {
        EdgeWeights out = *this;
        for (auto& kv : out.values_) kv.second *= c;
        return out;
    }

    friend bool operator==(const EdgeWeights&, const EdgeWeights&) = default;

private:
    std::map<Edge, cplx> values_;
};

enum class MatrixType { adjacency, laplacian, signless_laplacian, weighted_adjacency };

inline std::string_view matrix_type_name(MatrixType t) {
    switch (t) {
    case MatrixType::adjacency: return "adjacency";
    case MatrixType::laplacian: return "laplacian";
    case MatrixType::signless_laplacian: return "signless-laplacian";
    case MatrixType::weighted_adjacency: return "weighted-adjacency";
    }
    return "?";
}

struct MatrixKind {
    MatrixType type = MatrixType::adjacency;
    std::optional<EdgeWeights> weights;  ///< present iff weighted_adjacency

    static MatrixKind adjacency() { return {MatrixType::adjacency, std::nullopt}; }
    static MatrixKind laplacian() { return {MatrixType::laplacian, std::nullopt}; }
    static MatrixKind signless_laplacian() { return {MatrixType::signless_laplacian, std::nullopt}; }
    static MatrixKind weighted(EdgeWeights w) { return {MatrixType::weighted_adjacency, std::move(w)}; }
};

namespace detail {
inline void check_kind(const Graph& g, const MatrixKind& kind) {
    const bool weighted = kind.type == MatrixType::weighted_adjacency;
    if (weighted != kind.weights.has_value())
        throw ValidationError("weights must be present exactly for weighted-adjacency");
    if (weighted)
        for (const auto& [e, w] : kind.weights->values()) {
            (void)w;
            if (!g.adjacent(e.first, e.second))
                throw ValidationError("weight on non-edge {" + std::to_string(e.first) + "," +
                                      std::to_string(e.second) + "}");
        }
}
} // namespace detail

/// Real-symmetric fast path. Weighted kinds must carry real weights.
inline RealMatrix build_real_matrix(const Graph& g, const MatrixKind& kind) {
    detail::check_kind(g, kind);
    const auto n = static_cast<std::size_t>(g.order());
    RealMatrix m(n, n);
    const double sign = kind.type == MatrixType::laplacian ? -1.0 : 1.0;
    for (auto [v, w] : g.edges()) {
        double a = 1.0;
        if (kind.type == MatrixType::weighted_adjacency) {
            const cplx x = kind.weights->at(v, w);
            if (x.imag() != 0.0) throw ValidationError("complex weights need build_matrix");
            a = x.real();
        }
        m(v, w) = sign * a;
        m(w, v) = sign * a;
    }
    if (kind.type == MatrixType::laplacian || kind.type == MatrixType::signless_laplacian)
        for (int v = 0; v < g.order(); ++v) m(v, v) = g.degree(v);
    return m;
}

/// Hermitian matrix of the requested kind: A, D - A, D + A, or W o A.
inline ComplexMatrix build_matrix(const Graph& g, const MatrixKind& kind) {
    detail::check_kind(g, kind);
    if (kind.type != MatrixType::weighted_adjacency) return to_complex(build_real_matrix(g, kind));
    const auto n = static_cast<std::size_t>(g.order());
    ComplexMatrix m(n, n);
    for (auto [v, w] : g.edges()) {
        m(v, w) = kind.weights->at(v, w);
        m(w, v) = kind.weights->at(w, v);
    }
    return m;
}

/// Full eigendecomposition with eigenvalues in descending order. Rejects
/// matrices whose Hermitian residual exceeds 1e-12 (scaled by max |entry| when
/// that exceeds one).
template <typename T>
inline EigenDecomposition<T> eigendecompose(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw ValidationError("eigendecompose needs a square matrix");
    if (hermitian_residual(m) > 1e-12 * std::max(1.0, max_abs(m)))
        throw ValidationError("matrix is not Hermitian");
    return jacobi_eigen(m);
}

struct Inertia {
    int positive = 0;
    int zero = 0;
    int negative = 0;

    int order() const noexcept { return positive + zero + negative; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

struct Spectrum {
    std::vector<double> eigenvalues;  ///< descending
    Inertia inertia;
    double zero_tolerance = 0.0;
    MatrixType matrix = MatrixType::adjacency;
    /// Some eigenvalue has magnitude within a decade of the zero tolerance.
    bool borderline = false;

    double largest() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
    double smallest() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

/// 1e-7 * max(1, max |eigenvalue|).
inline double default_zero_tolerance(std::span<const double> eigenvalues) {
    double m = 1.0;
    for (double x : eigenvalues) m = std::max(m, std::abs(x));
    return 1e-7 * m;
}

inline Spectrum classify(std::vector<double> eigenvalues, MatrixType type, std::optional<double> tol) {
    Spectrum s;
    s.matrix = type;
    s.zero_tolerance = tol ? *tol : default_zero_tolerance(eigenvalues);
    if (s.zero_tolerance <= 0.0) throw ValidationError("zero tolerance must be positive");
    for (double x : eigenvalues) {
        if (x > s.zero_tolerance) ++s.inertia.positive;
        else if (x < -s.zero_tolerance) ++s.inertia.negative;
        else ++s.inertia.zero;
        const double a = std::abs(x);
        if (a > s.zero_tolerance / 10 && a < 10 * s.zero_tolerance) s.borderline = true;
    }
    s.eigenvalues = std::move(eigenvalues);
    return s;
}

inline Spectrum spectrum(const Graph& g, const MatrixKind& kind, std::optional<double> tol = std::nullopt) {
    if (kind.type == MatrixType::weighted_adjacency && !kind.weights->is_real())
        return classify(eigenvalues(build_matrix(g, kind)), kind.type, tol);
    return classify(eigenvalues(build_real_matrix(g, kind)), kind.type, tol);
}

/// Adjacency spectrum with inertia (n+, n0, n-).
inline Spectrum inertia(const Graph& g, std::optional<double> tol = std::nullopt) {
    return spectrum(g, MatrixKind::adjacency(), tol);
}

/// A = B - C with B = P+ A P+ and C = -P- A P-, both positive semidefinite.
struct PsdSplit {
    RealMatrix positive_part;      ///< B
    RealMatrix negative_part;      ///< C
    RealMatrix positive_projector; ///< P+
    RealMatrix negative_projector; ///< P-
    Inertia inertia;
};

inline PsdSplit psd_split(const Graph& g, std::optional<double> tol = std::nullopt) {
    const RealMatrix a = build_real_matrix(g, MatrixKind::adjacency());
    const auto eig = eigendecompose(a);
    const auto n = static_cast<std::size_t>(g.order());
    const double t = tol ? *tol : default_zero_tolerance(eig.values);
    PsdSplit out{RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = eig.values[i];
        const bool pos = mu > t, neg = mu < -t;
        if (!pos && !neg) {
            ++out.inertia.zero;
            continue;
        }
        (pos ? out.inertia.positive : out.inertia.negative)++;
        RealMatrix& part = pos ? out.positive_part : out.negative_part;
        RealMatrix& proj = pos ? out.positive_projector : out.negative_projector;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const double f = eig.vectors(r, i) * eig.vectors(c, i);
                part(r, c) += std::abs(mu) * f;
                proj(r, c) += f;
            }
    }
    return out;
}

/// Characteristic polynomial det(xI - A) of the adjacency matrix by
/// Faddeev-LeVerrier in exact integer arithmetic. coeffs[k] multiplies x^k.
inline std::vector<BigInt> characteristic_polynomial(const Graph& g) {
    const int n = g.order();
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    c[n] = 1;
    std::vector<BigInt> m(static_cast<std::size_t>(n) * n), am(m.size());
    for (int k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I; M_0 = 0
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt s = 0;
                for (int l : g.neighbors(i)) s += m[static_cast<std::size_t>(l) * n + j];
                am[static_cast<std::size_t>(i) * n + j] = std::move(s);
            }
        for (int i = 0; i < n; ++i) am[static_cast<std::size_t>(i) * n + i] += c[n - k + 1];
        m.swap(am);
        BigInt trace = 0;
        for (int i = 0; i < n; ++i)
            for (int l : g.neighbors(i)) trace += m[static_cast<std::size_t>(l) * n + i];
        c[n - k] = -trace / k;
    }
    return c;
}

/// Exact inertia from the characteristic polynomial. All roots are real, so
/// Descartes' rule of signs counts the positive and negative roots exactly.
inline Inertia exact_inertia(const Graph& g) {
    const auto c = characteristic_polynomial(g);
    Inertia in;
    std::size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    in.zero = static_cast<int>(low);
    auto variations = [&](bool negate_odd) {
        int count = 0, last = 0;
        for (std::size_t k = low; k < c.size(); ++k) {
            int s = c[k].sign();
            if (s == 0) continue;
            if (negate_odd && (k % 2 == 1)) s = -s;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    };
    in.positive = variations(false);
    in.negative = variations(true);
    return in;
}

} // namespace orthorank

#endif // ORTHORANK_SPECTRAL_HPP
