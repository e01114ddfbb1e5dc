#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "dotphonon/oracle.hpp"
#include "dotphonon/presets.hpp"
#include "dotphonon/qubit_model.hpp"
#include "support/generators.hpp"

using namespace dotphonon;
using Catch::Approx;

namespace {

const QubitParams kReference{225.0, 19.27, 12.20, 54.18};

bool has(const std::vector<RegimeWarning>& ws, RegimeWarning w) {
    return std::find(ws.begin(), ws.end(), w) != ws.end();
}

double min_gap(const QubitEigenSystem& es) {
    return std::min(es.energies[1] - es.energies[0], es.energies[2] - es.energies[1]);
}

} // namespace

TEST_CASE("build_hamiltonian layout", "[qubit]") {
    const Sym3Matrix h = build_hamiltonian(kReference);
    CHECK(h.a00 == 112.5);
    CHECK(h.a01 == 19.27);
    CHECK(h.a02 == 12.20);
    CHECK(h.a11 == -112.5);
    CHECK(h.a12 == 0.0);
    CHECK(h.a22 == Approx(-58.32).epsilon(1e-15));

    CHECK(build_hamiltonian({0.0, 0.0, 0.0, 0.0}) == Sym3Matrix{});
    CHECK(build_hamiltonian({0.0, 1.0, 0.0, 0.0}) == Sym3Matrix{0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("invalid qubit parameters are rejected", "[qubit]") {
    CHECK_THROWS_AS(build_hamiltonian({225.0, -1.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(build_hamiltonian({225.0, 0.0, -1.0, 0.0}), Error);
    CHECK_THROWS_AS(build_hamiltonian({225.0, 0.0, 0.0, -1.0}), Error);
    CHECK_THROWS_AS(build_hamiltonian({std::nan(""), 0.0, 0.0, 0.0}), Error);
    CHECK_NOTHROW(build_hamiltonian({-300.0, 1.0, 1.0, 1.0}));  // negative detuning is allowed
}

TEST_CASE("system operator", "[qubit]") {
    const Sym3Matrix o = system_operator();
    CHECK(o == Sym3Matrix::diagonal(1.0, -1.0, -1.0));
    CHECK(o.trace() == -1.0);
    CHECK(o.full() * o.full() == Mat3::identity());
}

TEST_CASE("diagonalize: decoupled and reference cases", "[qubit]") {
    const auto dec = diagonalize({225.0, 0.0, 0.0, 54.18});
    CHECK(dec.energies[0] == Approx(-112.5));
    CHECK(dec.energies[1] == Approx(-58.32));
    CHECK(dec.energies[2] == Approx(112.5));
    CHECK(qubit_energy(dec) == Approx(54.18).epsilon(1e-14));

    const auto ref = diagonalize(kReference);
    const auto cubic = oracle::cubic_eigen_oracle(build_hamiltonian(kReference));
    for (std::size_t k = 0; k < 3; ++k) CHECK(ref.energies[k] == Approx(cubic[k]).epsilon(1e-10));
    CHECK(qubit_energy(ref) == Approx(cubic[1] - cubic[0]).epsilon(1e-10));
    CHECK(qubit_energy(ref) == Approx(55.004488679148690277).epsilon(1e-12));
    CHECK(ref.params == kReference);
}

TEST_CASE("qubit_energy is E1 - E0", "[qubit]") {
    QubitEigenSystem es;
    es.energies = {-114.0, -59.0, 113.0};
    CHECK(qubit_energy(es) == 55.0);
}

TEST_CASE("large detuning: ground state approaches -eps/2", "[qubit]") {
    // Second-order perturbation theory: E0 = -ε/2 - Δ1²/ε + O(Δ⁴/ε³).
    const QubitParams p{1e6, 19.27, 12.20, 54.18};
    const auto es = diagonalize(p);
    CHECK(std::abs(es.energies[0] + p.eps / 2.0) <= 1e-3 * p.eps / 2.0);
    CHECK(es.energies[0] == Approx(-p.eps / 2.0 - p.delta1 * p.delta1 / p.eps).epsilon(1e-12));
}

TEST_CASE("chi matrix: decoupled levels", "[qubit][chi]") {
    const auto chi = chi_matrix(diagonalize({225.0, 0.0, 0.0, 54.18}));
    std::array<double, 3> d{chi(0, 0), chi(1, 1), chi(2, 2)};
    std::sort(d.begin(), d.end());
    CHECK(d == std::array<double, 3>{-1.0, -1.0, 1.0});
    CHECK(chi(0, 1) == 0.0);
    CHECK(chi(0, 2) == 0.0);
    CHECK(chi(1, 2) == 0.0);
}

TEST_CASE("chi matrix matches the adjugate-eigenvector oracle", "[qubit][chi][oracle]") {
    const auto chi = chi_matrix(diagonalize(kReference));
    const Mat3 ref = oracle::chi_oracle(build_hamiltonian(kReference), system_operator());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(chi(i, j) - ref(i, j)) < 1e-9);
    CHECK(chi(1, 0) * chi(1, 0) == Approx(0.00013633480750389641308).epsilon(1e-9));
    CHECK(chi(1, 1) - chi(0, 0) == Approx(-0.0054065085915876013688).epsilon(1e-9));
}

TEST_CASE("dEQ/deps: exact zeros and error path", "[qubit][deq]") {
    CHECK(deq_deps(QubitParams{225.0, 0.0, 0.0, 54.18}) == 0.0);
    CHECK(std::abs(deq_deps(QubitParams{0.0, 1.0, 0.0, 100.0})) < 1e-12);
    try {
        (void)deq_deps(QubitParams{225.0, 0.0, 0.0, 0.0});
        FAIL("expected DegenerateLevels");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateLevels);
    }
}

TEST_CASE("dEQ/deps at the reference point matches finite differences", "[qubit][deq]") {
    const double hf = deq_deps(kReference);
    CHECK(std::abs(hf - testing::finite_difference_deq(kReference, 1e-3)) < 1e-7);
    CHECK(hf == Approx(-0.0027032542957938006844).epsilon(1e-9));
}

TEST_CASE("validate_regime thresholds", "[qubit][regime]") {
    const BathParams bath = presets::reference_bath();
    CHECK(validate_regime(kReference, bath, Temperature(0.1)).empty());
    CHECK(has(validate_regime(kReference, bath, Temperature(1.6)), RegimeWarning::HamiltonianDominatedViolated));
    // Configurable factor: with ">>" meaning 100x even 0.1 K fails.
    CHECK(has(validate_regime(kReference, bath, Temperature(0.1), 100.0), RegimeWarning::HamiltonianDominatedViolated));

    const BathParams zero_d1_bath = presets::make_bath({225.0, 1.0, 0.0, 0.0}, 1.0);
    CHECK(has(validate_regime(QubitParams{225.0, 0.0, 0.0, 0.0}, zero_d1_bath, Temperature(0.1)), RegimeWarning::LevelsNearDegenerate));
}

TEST_CASE("Hellmann-Feynman and chi invariants on random parameters", "[qubit][property]") {
    testing::Gen gen(20240607);
    int checked = 0;
    while (checked < 500) {
        const QubitParams p = gen.qubit();
        const auto es = diagonalize(p);
        if (min_gap(es) < 2.0) continue;  // finite differences need resolved anticrossings
        ++checked;
        const auto chi = chi_matrix(es);
        INFO("eps=" << p.eps << " d1=" << p.delta1 << " d2=" << p.delta2 << " dr=" << p.deltaR);
        CHECK(std::abs(deq_deps(es, chi) - testing::finite_difference_deq(p)) < 1e-6);

        CHECK(std::abs(chi.trace() + 1.0) < 1e-10);
        const Mat3 sq = chi.m.full() * chi.m.full();
        CHECK(max_abs_diff(sq, Mat3::identity()) < 1e-10);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(std::abs(chi(i, j)) <= 1.0 + 1e-10);
                CHECK(chi(i, j) == chi(j, i));
            }
    }
}

TEST_CASE("flipping eigenvector signs leaves squared chi entries unchanged", "[qubit][property]") {
    testing::Gen gen(7);
    for (int n = 0; n < 100; ++n) {
        const QubitParams p = gen.qubit();
        const auto es = diagonalize(p);
        const auto chi = chi_matrix(es);
        for (std::size_t col = 0; col < 3; ++col) {
            QubitEigenSystem flipped = es;
            for (std::size_t r = 0; r < 3; ++r) flipped.u(r, col) = -flipped.u(r, col);
            const auto chi_f = chi_matrix(flipped);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) CHECK(chi_f(i, j) * chi_f(i, j) == chi(i, j) * chi(i, j));
        }
    }
}

TEST_CASE("far detuned limits of dEQ/deps", "[qubit]") {
    // Negative side: the left-dot state sits alone at the bottom, so E_Q ~ -eps.
    const QubitParams left{-1e5, 19.27, 12.20, 54.18};
    const auto chi_l = chi_matrix(diagonalize(left));
    CHECK(chi_l(0, 0) == Approx(1.0).margin(1e-3));
    CHECK(chi_l(1, 1) == Approx(-1.0).margin(1e-3));
    CHECK(std::abs(deq_deps(left) + 1.0) < 1e-3);

    // Positive side: both qubit levels live in the right dot and E_Q -> deltaR.
    const QubitParams right{1e5, 19.27, 12.20, 54.18};
    CHECK(qubit_energy(diagonalize(right)) == Approx(54.18).margin(1e-2));
    CHECK(std::abs(deq_deps(right)) < 1e-3);

    double prev_l = deq_deps(QubitParams{-2e3, 19.27, 12.20, 54.18});
    double prev_r = std::abs(deq_deps(QubitParams{2e3, 19.27, 12.20, 54.18}));
    for (double eps : {5e3, 1e4, 3e4, 1e5}) {
        const double dl = deq_deps(QubitParams{-eps, 19.27, 12.20, 54.18});
        const double dr = std::abs(deq_deps(QubitParams{eps, 19.27, 12.20, 54.18}));
        CHECK(dl < prev_l);
        CHECK(dr < prev_r);
        prev_l = dl;
        prev_r = dr;
    }
}
