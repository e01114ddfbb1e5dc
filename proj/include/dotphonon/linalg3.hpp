// Deterministic eigendecomposition of real symmetric 3x3 matrices

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "dotphonon/error.hpp"

namespace dotphonon {

// Dense row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> a{};

    constexpr double& operator()(std::size_t r, std::size_t c) noexcept { return a[3 * r + c]; }
    constexpr double operator()(std::size_t r, std::size_t c) const noexcept { return a[3 * r + c]; }

    static constexpr Mat3 identity() noexcept {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    constexpr Mat3 transposed() const noexcept {
        Mat3 t;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend constexpr Mat3 operator*(const Mat3& x, const Mat3& y) noexcept {
        Mat3 z;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < 3; ++k) s += x(r, k) * y(k, c);
                z(r, c) = s;
            }
        return z;
    }

    friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

inline double max_abs(const Mat3& m) noexcept {
    double v = 0.0;
    for (double x : m.a) v = std::max(v, std::abs(x));
    return v;
}

inline double max_abs_diff(const Mat3& x, const Mat3& y) noexcept {
    double v = 0.0;
    for (std::size_t i = 0; i < 9; ++i) v = std::max(v, std::abs(x.a[i] - y.a[i]));
    return v;
}

/// Real symmetric 3x3 matrix. Only the upper triangle is stored, so symmetry
/// holds by construction.
struct Sym3Matrix {
    double a00{}, a01{}, a02{}, a11{}, a12{}, a22{};

    static constexpr Sym3Matrix diagonal(double d0, double d1, double d2) noexcept {
        return {d0, 0.0, 0.0, d1, 0.0, d2};
    }

    /// Builds from a full matrix. Throws InvalidParameter when the input is not
    /// symmetric to within `tol` (absolute).
    static Sym3Matrix from_full(const Mat3& m, double tol = 0.0) {
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = r + 1; c < 3; ++c)
                if (!(std::abs(m(r, c) - m(c, r)) <= tol))
                    throw Error(ErrorKind::InvalidParameter, "matrix is not symmetric");
        return {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
    }

    constexpr double operator()(std::size_t r, std::size_t c) const noexcept {
        if (r > c) std::swap(r, c);
        if (r == 0) return c == 0 ? a00 : (c == 1 ? a01 : a02);
        if (r == 1) return c == 1 ? a11 : a12;
        return a22;
    }

    constexpr Mat3 full() const noexcept {
        Mat3 m;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) m(r, c) = (*this)(r, c);
        return m;
    }

    constexpr double trace() const noexcept { return a00 + a11 + a22; }

    bool is_finite() const noexcept {
        return std::isfinite(a00) && std::isfinite(a01) && std::isfinite(a02) &&
               std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a22);
    }

    friend constexpr bool operator==(const Sym3Matrix&, const Sym3Matrix&) = default;
};

/// Eigenvalues in ascending order; column k of `vectors` belongs to
/// eigenvalue k. In every column the entry of largest magnitude is
/// non-negative (first such row on ties).
struct EigenSystem {
    std::array<double, 3> values{};
    Mat3 vectors = Mat3::identity();

    Mat3 reconstruct() const noexcept {
        Mat3 d;
        for (std::size_t k = 0; k < 3; ++k) d(k, k) = values[k];
        return vectors * d * vectors.transposed();
    }
};

namespace detail {

inline void normalize_column(Mat3& v, std::size_t c) noexcept {
    double n = std::sqrt(v(0, c) * v(0, c) + v(1, c) * v(1, c) + v(2, c) * v(2, c));
    for (std::size_t r = 0; r < 3; ++r) v(r, c) /= n;
}

inline void apply_sign_rule(Mat3& v, std::size_t c) noexcept {
    std::size_t best = 0;
    for (std::size_t r = 1; r < 3; ++r)
        if (std::abs(v(r, c)) > std::abs(v(best, c))) best = r;
    if (v(best, c) < 0.0)
        for (std::size_t r = 0; r < 3; ++r) v(r, c) = -v(r, c);
}

// Replaces the columns [first, last) that span a degenerate eigenspace by the
// Gram-Schmidt orthonormalization of the canonical basis vectors e0, e1, e2
// projected onto that space, taken in ascending order.
inline void canonicalize_subspace(Mat3& v, std::size_t first, std::size_t last) noexcept {
    const std::size_t dim = last - first;
    std::array<std::array<double, 3>, 3> basis{};
    std::size_t accepted = 0;
    for (std::size_t e = 0; e < 3 && accepted < dim; ++e) {
        // Projection of e onto span{v[:, first..last)}.
        std::array<double, 3> p{};
        for (std::size_t c = first; c < last; ++c)
            for (std::size_t r = 0; r < 3; ++r) p[r] += v(e, c) * v(r, c);
        for (std::size_t k = 0; k < accepted; ++k) {
            double d = p[0] * basis[k][0] + p[1] * basis[k][1] + p[2] * basis[k][2];
            for (std::size_t r = 0; r < 3; ++r) p[r] -= d * basis[k][r];
        }
        double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        // Some residual always exceeds 1/sqrt(3) while the subspace is not
        // exhausted, so 0.5 never starves the loop.
        if (n < 0.5) continue;
        for (std::size_t r = 0; r < 3; ++r) basis[accepted][r] = p[r] / n;
        ++accepted;
    }
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t r = 0; r < 3; ++r) v(r, first + k) = basis[k][r];
}

} // namespace detail

/// Cyclic Jacobi diagonalization. Deterministic: identical input gives
/// bit-identical output.
inline EigenSystem eig3_sym(const Sym3Matrix& m) {
    if (!m.is_finite()) throw Error(ErrorKind::NonFinite, "matrix has a NaN or infinite entry");

    Mat3 a = m.full();
    Mat3 v = Mat3::identity();
    const double scale = std::max(1.0, max_abs(a));
    constexpr std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = std::sqrt(a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2));
        if (off <= 1e-14 * scale) break;
        for (auto [p, q] : pairs) {
            const double apq = a(p, q);
            if (apq == 0.0) continue;
            const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
            double t;
            if (std::abs(theta) > 1e150) {
                t = 0.5 / theta;
            } else {
                t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
            }
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            const std::size_t r = 3 - p - q;  // the untouched index
            const double arp = a(r, p), arq = a(r, q);
            a(p, p) -= t * apq;
            a(q, q) += t * apq;
            a(p, q) = a(q, p) = 0.0;
            a(r, p) = a(p, r) = c * arp - s * arq;
            a(r, q) = a(q, r) = s * arp + c * arq;
            for (std::size_t k = 0; k < 3; ++k) {
                const double vkp = v(k, p), vkq = v(k, q);
                v(k, p) = c * vkp - s * vkq;
                v(k, q) = s * vkp + c * vkq;
            }
        }
    }

    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenSystem es;
    for (std::size_t k = 0; k < 3; ++k) {
        es.values[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < 3; ++r) es.vectors(r, k) = v(r, order[k]);
        detail::normalize_column(es.vectors, k);
    }

    // Degenerate clusters get a canonical basis so output does not depend on
    // rotation history.
    const double degeneracy_tol = 1e-12 * scale;
    std::size_t first = 0;
    while (first < 3) {
        std::size_t last = first + 1;
        while (last < 3 && es.values[last] - es.values[last - 1] <= degeneracy_tol) ++last;
        if (last - first > 1) detail::canonicalize_subspace(es.vectors, first, last);
        first = last;
    }

    for (std::size_t k = 0; k < 3; ++k) detail::apply_sign_rule(es.vectors, k);
    return es;
}

} // namespace dotphonon
