#ifndef ORTHORANK_LINALG_HPP
#define ORTHORANK_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <type_traits>
#include <vector>

#include "orthorank/error.hpp"

namespace orthorank {

using cplx = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
inline T conj_of(const T& x) {
    if constexpr (is_complex<T>::value) return std::conj(x);
    else return x;
}

template <typename T>
inline double real_of(const T& x) {
    if constexpr (is_complex<T>::value) return x.real();
    else return x;
}

/// Dense row-major square-or-rectangular matrix.
template <typename T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = conj_of((*this)(i, j));
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(T s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, T s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("matrix product dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;

template <typename T>
inline double max_abs(const Matrix<T>& m) {
    double r = 0.0;
    for (const auto& x : m.data()) r = std::max(r, std::abs(x));
    return r;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

template <typename T>
inline double hermitian_residual(const Matrix<T>& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            r = std::max(r, std::abs(m(i, j) - conj_of(m(j, i))));
    return r;
}

template <typename T>
inline Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T aij = a(i, j);
            if (aij == T{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

template <typename T>
inline T inner(std::span<const T> x, std::span<const T> y) {
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += conj_of(x[i]) * y[i];
    return s;
}

template <typename T>
inline double norm2(std::span<const T> x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

/// Rank-one outer product x y^dagger.
template <typename T>
inline Matrix<T> outer(std::span<const T> x, std::span<const T> y) {
    Matrix<T> out(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * conj_of(y[j]);
    return out;
}

// ---------------------------------------------------------------------------
// Eigensolver

template <typename T>
struct EigenDecomposition {
    std::vector<double> values;   ///< descending
    Matrix<T> vectors;            ///< column i is the unit eigenvector of values[i]
};

/// Cyclic Jacobi for real symmetric or complex Hermitian matrices. Each
/// complex rotation first rephases column q so the pivot becomes real, then
/// applies a real plane rotation.
template <typename T>
inline EigenDecomposition<T> jacobi_eigen(Matrix<T> a, bool want_vectors = true) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw ValidationError("eigendecomposition needs a square matrix");
    Matrix<T> v = want_vectors ? Matrix<T>::identity(n) : Matrix<T>();

    for (std::size_t i = 0; i < n; ++i) a(i, i) = T{real_of(a(i, i))};

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return s;
    };
    double scale = 0.0;
    for (const auto& x : a.data()) scale += std::norm(x);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() <= 1e-30 * scale || scale == 0.0) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-300) continue;
                if constexpr (is_complex<T>::value) {
                    // rephase: column q *= conj(phase), row q *= phase
                    const T phase = a(p, q) / r;
                    const T cph = std::conj(phase);
                    for (std::size_t k = 0; k < n; ++k) {
                        a(k, q) *= cph;
                        a(q, k) *= phase;
                    }
                    a(q, q) = T{real_of(a(q, q))};
                    if (want_vectors)
                        for (std::size_t k = 0; k < n; ++k) v(k, q) *= cph;
                }
                // after rephasing the pivot is real; in the real case it keeps its sign
                const double apq = is_complex<T>::value ? r : real_of(a(p, q));
                const double app = real_of(a(p, p)), aqq = real_of(a(q, q));
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a(p, p) = T{app - t * apq};
                a(q, q) = T{aqq + t * apq};
                a(p, q) = T{};
                a(q, p) = T{};
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const T akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp - s * (akq + tau * akp);
                    a(k, q) = akq + s * (akp - tau * akq);
                    a(p, k) = conj_of(a(k, p));
                    a(q, k) = conj_of(a(k, q));
                }
                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k) {
                        const T vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = vkp - s * (vkq + tau * vkp);
                        v(k, q) = vkq + s * (vkp - tau * vkq);
                    }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return real_of(a(x, x)) > real_of(a(y, y)); });
    EigenDecomposition<T> out;
    out.values.reserve(n);
    for (std::size_t i : order) out.values.push_back(real_of(a(i, i)));
    if (want_vectors) {
        out.vectors = Matrix<T>(n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
    }
    return out;
}

template <typename T>
inline std::vector<double> eigenvalues(const Matrix<T>& m) {
    return jacobi_eigen(m, false).values;
}

/// Singular values, descending, via the eigenvalues of M^dagger M.
template <typename T>
inline std::vector<double> singular_values(const Matrix<T>& m) {
    auto vals = eigenvalues(m.adjoint() * m);
    for (auto& x : vals) x = std::sqrt(std::max(0.0, x));
    return vals;
}

inline constexpr double kRankRelTol = 1e-8;

/// Number of singular values above rel_tol * sigma_max. Hermitian inputs use
/// |eigenvalues| directly.
template <typename T>
inline int numerical_rank(const Matrix<T>& m, double rel_tol = kRankRelTol) {
    std::vector<double> sv;
    if (m.rows() == m.cols() && hermitian_residual(m) <= 1e-12 * std::max(1.0, max_abs(m))) {
        sv = eigenvalues(m);
        for (auto& x : sv) x = std::abs(x);
    } else {
        sv = singular_values(m);
    }
    double smax = 0.0;
    for (double x : sv) smax = std::max(smax, x);
    if (smax == 0.0) return 0;
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x > rel_tol * smax; }));
}

/// Unit vector v minimizing |N v| for a complex m x d matrix N, by one-sided
/// (Hestenes) Jacobi on the columns of N. Working on N rather than N^dagger N
/// keeps |N v| accurate to rounding level instead of its square root.
inline std::vector<cplx> smallest_right_singular_vector(ComplexMatrix n) {
    const std::size_t m = n.rows(), d = n.cols();
    ComplexMatrix v = ComplexMatrix::identity(d);
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(n(i, p));
                    beta += std::norm(n(i, q));
                    gamma += std::conj(n(i, p)) * n(i, q);
                }
                const double g = std::abs(gamma);
                if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                const cplx cph = std::conj(gamma / g);
                for (std::size_t i = 0; i < m; ++i) n(i, q) *= cph;
                for (std::size_t i = 0; i < d; ++i) v(i, q) *= cph;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx np = n(i, p), nq = n(i, q);
                    n(i, p) = c * np - s * nq;
                    n(i, q) = s * np + c * nq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        if (!rotated) break;
    }
    std::size_t best = 0;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(n(i, j));
        if (s < best_norm) {
            best_norm = s;
            best = j;
        }
    }
    std::vector<cplx> out = v.column(best);
    const double nrm = norm2<cplx>(out);
    for (auto& e : out) e /= nrm;
    return out;
}

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix, with the diagonal of R made positive.
template <typename Rng>
inline ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix q(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) q(i, j) = cplx(gauss(rng), gauss(rng));
    // modified Gram-Schmidt on columns
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj{};
            for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < d; ++i) q(i, j) /= nrm;
    }
    return q;
}

} // namespace orthorank

#endif // ORTHORANK_LINALG_HPP
