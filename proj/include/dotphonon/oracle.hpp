// Brute-force reference implementations used for verification
//
// Nothing in the production pipeline calls into this header. Each routine
// takes a different numerical route from the code it checks:
//   - eigenvalues from the trigonometric roots of the characteristic cubic
//   - eigenvectors from the adjugate of (A - λI)
//   - the bath spectrum from a finite set of oscillators, via a numerically
//     Fourier-transformed thermal correlator

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/linalg3.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon::oracle {

// ------------------------------ Eigen checks --------------------------------

inline double determinant(const Mat3& m) noexcept {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// det(A - λI)
inline double characteristic(const Sym3Matrix& a, double lambda) noexcept {
    Mat3 m = a.full();
    for (std::size_t k = 0; k < 3; ++k) m(k, k) -= lambda;
    return determinant(m);
}

/// Eigenvalues of a symmetric 3x3 matrix from the closed-form cubic roots,
/// ascending.
inline std::array<double, 3> cubic_eigen_oracle(const Sym3Matrix& a) {
    const double p1 = a.a01 * a.a01 + a.a02 * a.a02 + a.a12 * a.a12;
    if (p1 == 0.0) {
        std::array<double, 3> d{a.a00, a.a11, a.a22};
        std::sort(d.begin(), d.end());
        return d;
    }
    const double q = a.trace() / 3.0;
    const double d0 = a.a00 - q, d1 = a.a11 - q, d2 = a.a22 - q;
    const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);

    Mat3 b = a.full();
    for (std::size_t k = 0; k < 3; ++k) b(k, k) -= q;
    for (double& x : b.a) x /= p;
    const double r = std::clamp(determinant(b) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double mid = 3.0 * q - hi - lo;
    std::array<double, 3> out{lo, mid, hi};
    std::sort(out.begin(), out.end());
    return out;
}

/// Unit eigenvector for a simple eigenvalue λ: the largest cross product of two
/// rows of (A - λI), i.e. the dominant column of its adjugate. The sign is
/// fixed so the largest-magnitude entry is non-negative.
inline std::array<double, 3> adjugate_eigenvector(const Sym3Matrix& a, double lambda) {
    Mat3 m = a.full();
    for (std::size_t k = 0; k < 3; ++k) m(k, k) -= lambda;
    auto cross = [&](std::size_t i, std::size_t j) {
        return std::array<double, 3>{m(i, 1) * m(j, 2) - m(i, 2) * m(j, 1),
                                     m(i, 2) * m(j, 0) - m(i, 0) * m(j, 2),
                                     m(i, 0) * m(j, 1) - m(i, 1) * m(j, 0)};
    };
    auto norm2 = [](const std::array<double, 3>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };

    std::array<double, 3> best{};
    double best_n = -1.0;
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
        auto c = cross(i, j);
        if (double n = norm2(c); n > best_n) {
            best = c;
            best_n = n;
        }
    }
    if (!(best_n > 0.0))
        throw Error(ErrorKind::DegenerateLevels, "adjugate vanishes: eigenvalue is not simple");
    const double n = std::sqrt(best_n);
    for (double& x : best) x /= n;

    std::size_t arg = 0;
    for (std::size_t r = 1; r < 3; ++r)
        if (std::abs(best[r]) > std::abs(best[arg])) arg = r;
    if (best[arg] < 0.0)
        for (double& x : best) x = -x;
    return best;
}

/// Full Uᵀ O U recomputed with oracle eigenvectors. Requires simple spectrum.
inline Mat3 chi_oracle(const Sym3Matrix& h, const Sym3Matrix& op) {
    const auto lambdas = cubic_eigen_oracle(h);
    Mat3 u;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto v = adjugate_eigenvector(h, lambdas[k]);
        for (std::size_t r = 0; r < 3; ++r) u(r, k) = v[r];
    }
    return u.transposed() * op.full() * u;
}

// ------------------------------ Quadrature ----------------------------------

/// Composite Simpson rule on [a, b] with n (rounded up to even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2 == 1) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return s * h / 3.0;
}

// ------------------------------ Discrete bath -------------------------------

struct BathMode {
    double omega;   // rad/ns
    double lambda;  // rad/ns
};

struct DiscreteBath {
    std::vector<BathMode> modes;
    BathParams source;
    double d_omega{};

    double coupling_sum() const noexcept {
        double s = 0.0;
        for (const auto& m : modes) s += m.lambda * m.lambda;
        return s;
    }
};

/// Uniform midpoint grid on (0, omega_max] with λ_j² = J(ω_j) Δω.
inline DiscreteBath sample_discrete_bath(const BathParams& b, std::size_t n_modes, double omega_max) {
    if (n_modes < 100) throw Error(ErrorKind::InvalidDiscretization, "need at least 100 modes");
    if (!(omega_max >= 20.0 * b.omega_c))
        throw Error(ErrorKind::InvalidDiscretization, "omega_max must be >= 20 omega_c");
    DiscreteBath db;
    db.source = b;
    db.d_omega = omega_max / static_cast<double>(n_modes);
    db.modes.reserve(n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) {
        const double w = (static_cast<double>(j) + 0.5) * db.d_omega;
        const double jw = b.eta * std::pow(w, b.s) * std::pow(b.omega_c, 1.0 - b.s) * std::exp(-w / b.omega_c);
        db.modes.push_back({w, std::sqrt(jw * db.d_omega)});
    }
    return db;
}

/// <f(t) f(0)>_β = Σ_j λ_j² [cos(ω_j t) coth(βħω_j/2) - i sin(ω_j t)]
inline std::complex<double> correlator(const DiscreteBath& db, const Temperature& t, double time_ns) {
    const double beta_hbar = units::hbar_ueV_ns / units::thermal_energy(t.kelvin);
    double re = 0.0, im = 0.0;
    for (const auto& m : db.modes) {
        const double l2 = m.lambda * m.lambda;
        const double x = beta_hbar * m.omega / 2.0;
        re += l2 * std::cos(m.omega * time_ns) / std::tanh(x);
        im -= l2 * std::sin(m.omega * time_ns);
    }
    return {re, im};
}

struct SpectrumWindow {
    double window_time_ns = 6.0;  // integrate over [-W, W]; Gaussian σ = W / 6
    double bin_width = 4.0;       // rad/ns, width of the averaging bin around each grid point
    std::size_t bin_samples = 9;
    unsigned threads = 1;
};

/// S(ω) = 1/(2π) ∫ <f(t)f(0)> e^{iωt} w(t) dt over [-W, W], bin-averaged.
/// The correlator samples are evaluated in parallel chunks; each sample is
/// computed independently so the result does not depend on `threads`.
inline std::vector<double> spectrum_from_correlator(const DiscreteBath& db, const Temperature& t,
                                                    std::span<const double> omega_grid,
                                                    const SpectrumWindow& win = {}) {
    const double w_time = win.window_time_ns;
    if (!(w_time > 0.0) || !(win.bin_width > 0.0) || win.bin_samples == 0)
        throw Error(ErrorKind::WindowTooShort, "window time and bin width must be positive");
    const double resolution = 2.0 * std::numbers::pi / w_time;
    if (win.bin_width < 2.0 * resolution)
        throw Error(ErrorKind::WindowTooShort, "bin width must be at least twice 2*pi/window_time");

    const double sigma_t = w_time / 6.0;
    double max_grid = 0.0;
    for (double w : omega_grid) max_grid = std::max(max_grid, std::abs(w));
    const double max_mode = db.modes.empty() ? 0.0 : db.modes.back().omega;
    // Sampling fast enough that no mode aliases into the evaluated band.
    const double band = max_mode + max_grid + win.bin_width + 12.0 / sigma_t;
    const auto n_steps = static_cast<std::size_t>(std::ceil(w_time * band / (2.0 * std::numbers::pi))) + 1;
    const double dt = w_time / static_cast<double>(n_steps);

    std::vector<std::complex<double>> samples(n_steps + 1);
    const unsigned n_threads = std::max(1u, win.threads);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (samples.size() + n_threads - 1) / n_threads;
        for (unsigned w = 0; w < n_threads; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(samples.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t k = lo; k < hi; ++k)
                    samples[k] = correlator(db, t, static_cast<double>(k) * dt);
            });
        }
    }

    // C(-t) = conj C(t): fold the symmetric integral onto [0, W].
    std::vector<std::complex<double>> weighted(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double tk = static_cast<double>(k) * dt;
        const double trap = (k == 0 || k == n_steps) ? 0.5 * dt : dt;
        weighted[k] = samples[k] * (trap * std::exp(-tk * tk / (2.0 * sigma_t * sigma_t)));
    }
    auto windowed = [&](double omega) {
        double acc = 0.0;
        for (std::size_t k = 0; k < weighted.size(); ++k) {
            const double phase = omega * static_cast<double>(k) * dt;
            acc += weighted[k].real() * std::cos(phase) - weighted[k].imag() * std::sin(phase);
        }
        return acc / std::numbers::pi;
    };

    std::vector<double> out;
    out.reserve(omega_grid.size());
    const auto m = static_cast<double>(win.bin_samples);
    for (double w : omega_grid) {
        double acc = 0.0;
        for (std::size_t i = 0; i < win.bin_samples; ++i)
            acc += windowed(w - win.bin_width / 2.0 + (static_cast<double>(i) + 0.5) * win.bin_width / m);
        out.push_back(acc / m);
    }
    return out;
}

} // namespace dotphonon::oracle
