#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dotphonon/oracle.hpp"
#include "dotphonon/presets.hpp"

using namespace dotphonon;
using Catch::Approx;

namespace {

const QubitParams kReference{225.0, 19.27, 12.20, 54.18};

double closed_form_integral(const BathParams& b, double omega_max) {
    // Ohmic: ∫₀^W η ω e^{-ω/ω_c} dω
    const double x = omega_max / b.omega_c;
    return b.eta * b.omega_c * b.omega_c * (1.0 - std::exp(-x) * (1.0 + x));
}

} // namespace

TEST_CASE("cubic oracle basic cases", "[oracle][cubic]") {
    const auto d = oracle::cubic_eigen_oracle(Sym3Matrix::diagonal(1.0, 2.0, 3.0));
    CHECK(d[0] == Approx(1.0).epsilon(1e-14));
    CHECK(d[1] == Approx(2.0).epsilon(1e-14));
    CHECK(d[2] == Approx(3.0).epsilon(1e-14));

    const auto p = oracle::cubic_eigen_oracle(Sym3Matrix{0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(p[0] == Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(p[1]) < 1e-14);
    CHECK(p[2] == Approx(1.0).epsilon(1e-14));

    const auto same = oracle::cubic_eigen_oracle(Sym3Matrix::diagonal(5.0, 5.0, 5.0));
    for (double v : same) CHECK(v == 5.0);
}

TEST_CASE("cubic oracle residual at the reference Hamiltonian", "[oracle][cubic]") {
    const Sym3Matrix h = build_hamiltonian(kReference);
    const double norm = max_abs(h.full());
    for (double l : oracle::cubic_eigen_oracle(h))
        CHECK(std::abs(oracle::characteristic(h, l)) < 1e-8 * norm * norm * norm);
}

TEST_CASE("adjugate eigenvectors are unit eigenvectors", "[oracle]") {
    const Sym3Matrix h = build_hamiltonian(kReference);
    for (double l : oracle::cubic_eigen_oracle(h)) {
        const auto v = oracle::adjugate_eigenvector(h, l);
        CHECK(std::hypot(v[0], v[1], v[2]) == Approx(1.0).epsilon(1e-14));
        const Mat3 m = h.full();
        for (std::size_t r = 0; r < 3; ++r) {
            const double hv = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2];
            CHECK(std::abs(hv - l * v[r]) < 1e-9);
        }
    }
}

TEST_CASE("discrete bath validation and structure", "[oracle][bath]") {
    const BathParams b = presets::reference_bath();
    try {
        (void)oracle::sample_discrete_bath(b, 99, 20.0 * b.omega_c);
        FAIL("expected InvalidDiscretization");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidDiscretization);
    }
    CHECK_THROWS_AS(oracle::sample_discrete_bath(b, 1000, 19.0 * b.omega_c), Error);

    const auto db = oracle::sample_discrete_bath(b, 1000, 20.0 * b.omega_c);
    REQUIRE(db.modes.size() == 1000);
    CHECK(db.modes.front().omega > 0.0);
    for (std::size_t j = 1; j < db.modes.size(); ++j) CHECK(db.modes[j].omega > db.modes[j - 1].omega);
    for (const auto& m : db.modes)
        CHECK(m.lambda * m.lambda == Approx(spectral_density(b, m.omega) * db.d_omega).epsilon(1e-12));

    BathParams silent = b;
    silent.eta = 0.0;
    for (const auto& m : oracle::sample_discrete_bath(silent, 500, 20.0 * b.omega_c).modes) CHECK(m.lambda == 0.0);
}

TEST_CASE("coupling sum converges to the continuum integral", "[oracle][bath]") {
    const BathParams b = presets::reference_bath();
    const double w_max = 20.0 * b.omega_c;
    const double exact = closed_form_integral(b, w_max);
    double prev_err = std::numeric_limits<double>::infinity();
    for (std::size_t n : {100u, 1000u, 10000u}) {
        const double err = std::abs(oracle::sample_discrete_bath(b, n, w_max).coupling_sum() - exact) / exact;
        INFO("N = " << n);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-5);

    const double sum = oracle::sample_discrete_bath(b, 10000, w_max).coupling_sum();
    CHECK(std::abs(sum - b.eta * b.omega_c * b.omega_c) / (b.eta * b.omega_c * b.omega_c) < 5e-3);
}

TEST_CASE("correlator structure", "[oracle][correlator]") {
    const BathParams b = presets::reference_bath();
    const auto db = oracle::sample_discrete_bath(b, 2000, 20.0 * b.omega_c);
    const Temperature t(0.1);

    const auto c0 = oracle::correlator(db, t, 0.0);
    CHECK(c0.imag() == 0.0);
    double expect = 0.0;
    const double bh = units::hbar_ueV_ns / units::thermal_energy(0.1);
    for (const auto& m : db.modes) expect += m.lambda * m.lambda / std::tanh(bh * m.omega / 2.0);
    CHECK(c0.real() == Approx(expect).epsilon(1e-12));

    for (double time : {0.013, 0.2, 1.7}) {
        const auto plus = oracle::correlator(db, t, time);
        const auto minus = oracle::correlator(db, t, -time);
        CHECK(minus.real() == Approx(plus.real()).epsilon(1e-12));
        CHECK(minus.imag() == Approx(-plus.imag()).epsilon(1e-12));
        // Temperature enters only through the cos term.
        CHECK(oracle::correlator(db, Temperature(1000.0), time).imag() == Approx(plus.imag()).epsilon(1e-12));
    }
}

TEST_CASE("spectrum window validation", "[oracle][spectrum]") {
    const BathParams b = presets::reference_bath();
    const auto db = oracle::sample_discrete_bath(b, 200, 20.0 * b.omega_c);
    const std::vector<double> grid{10.0};
    oracle::SpectrumWindow win;
    win.window_time_ns = 2.0;  // resolution π rad/ns; 4 < 2π
    try {
        (void)oracle::spectrum_from_correlator(db, Temperature(0.1), grid, win);
        FAIL("expected WindowTooShort");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WindowTooShort);
    }
    win.window_time_ns = 6.0;
    win.bin_width = 0.0;
    CHECK_THROWS_AS(oracle::spectrum_from_correlator(db, Temperature(0.1), grid, win), Error);
}

TEST_CASE("oracle spectrum of a silent bath is zero", "[oracle][spectrum]") {
    BathParams b = presets::reference_bath();
    b.eta = 0.0;
    const auto db = oracle::sample_discrete_bath(b, 500, 20.0 * b.omega_c);
    const std::vector<double> grid{-80.0, 0.0, 80.0};
    for (double v : oracle::spectrum_from_correlator(db, Temperature(0.1), grid)) CHECK(v == 0.0);
}

TEST_CASE("oracle spectrum reproduces the continuum spectrum", "[oracle][spectrum][slow]") {
    const BathParams b = presets::reference_bath();
    const Temperature t(0.1);
    const double w_q = units::energy_to_omega(qubit_energy(diagonalize(kReference)));
    const auto db = oracle::sample_discrete_bath(b, 10000, 20.0 * b.omega_c);

    std::vector<double> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(w_q * (0.1 + 4.9 * i / 19.0));
    grid.push_back(-w_q);
    oracle::SpectrumWindow win;
    win.threads = 2;
    const auto est = oracle::spectrum_from_correlator(db, t, grid, win);

    for (std::size_t i = 0; i < 20; ++i) {
        INFO("omega = " << grid[i]);
        const double exact = power_spectrum(b, t, grid[i]);
        CHECK(std::abs(est[i] - exact) <= 0.03 * exact);
    }
    const double at_wq = oracle::spectrum_from_correlator(db, t, std::vector<double>{w_q}, win)[0];
    const double boltz = std::exp(-t.beta() * qubit_energy(diagonalize(kReference)));
    CHECK(std::abs(est[20] / at_wq - boltz) <= 0.05 * boltz);
}

TEST_CASE("oracle spectrum is independent of thread count", "[oracle][spectrum]") {
    const BathParams b = presets::reference_bath();
    const auto db = oracle::sample_discrete_bath(b, 1000, 20.0 * b.omega_c);
    const std::vector<double> grid{-50.0, 30.0, 90.0};
    oracle::SpectrumWindow one, four;
    four.threads = 4;
    CHECK(oracle::spectrum_from_correlator(db, Temperature(0.3), grid, one) ==
          oracle::spectrum_from_correlator(db, Temperature(0.3), grid, four));
}
