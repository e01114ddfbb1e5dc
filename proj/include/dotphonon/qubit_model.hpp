// Three-level hybrid-qubit Hamiltonian and its coupling matrix
//
// Basis: |0> one charge configuration with singlet character, |1>, |2> the
// complementary configuration (singlet, triplet). Energies in μeV.

#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/linalg3.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon {

struct QubitParams {
    double eps{225.0};     // detuning ε
    double delta1{19.27};  // tunnel coupling Δ1
    double delta2{12.20};  // tunnel coupling Δ2
    double deltaR{54.18};  // right-dot low-energy splitting Δ_R

    void validate() const {
        if (!std::isfinite(eps) || !std::isfinite(delta1) || !std::isfinite(delta2) ||
            !std::isfinite(deltaR))
            throw Error(ErrorKind::InvalidParameter, "qubit parameters must be finite");
        if (delta1 < 0.0 || delta2 < 0.0 || deltaR < 0.0)
            throw Error(ErrorKind::InvalidParameter, "delta1, delta2 and deltaR must be >= 0");
    }

    friend bool operator==(const QubitParams&, const QubitParams&) = default;
};

struct QubitEigenSystem {
    std::array<double, 3> energies{};  // E0 <= E1 <= E2
    Mat3 u;                            // column k is the eigenvector of E_k
    QubitParams params;
};

/// Coupling operator in the energy eigenbasis, χ = Uᵀ Ô_S U.
struct ChiMatrix {
    Sym3Matrix m;

    double operator()(std::size_t i, std::size_t j) const noexcept { return m(i, j); }
    double trace() const noexcept { return m.trace(); }
};

inline Sym3Matrix build_hamiltonian(const QubitParams& p) {
    p.validate();
    return {p.eps / 2.0, p.delta1, p.delta2, -p.eps / 2.0, 0.0, -p.eps / 2.0 + p.deltaR};
}

/// Ô_S = diag(1, -1, -1). Note dH/dε = Ô_S / 2.
constexpr Sym3Matrix system_operator() noexcept { return Sym3Matrix::diagonal(1.0, -1.0, -1.0); }

inline QubitEigenSystem diagonalize(const QubitParams& p) {
    const EigenSystem es = eig3_sym(build_hamiltonian(p));
    return {es.values, es.vectors, p};
}

inline ChiMatrix chi_matrix(const QubitEigenSystem& es) {
    const Sym3Matrix o = system_operator();
    const std::array<double, 3> diag{o.a00, o.a11, o.a22};
    auto entry = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += diag[k] * es.u(k, i) * es.u(k, j);
        return s;
    };
    return {{entry(0, 0), entry(0, 1), entry(0, 2), entry(1, 1), entry(1, 2), entry(2, 2)}};
}

inline double qubit_energy(const QubitEigenSystem& es) noexcept { return es.energies[1] - es.energies[0]; }

inline constexpr double degeneracy_tolerance_ueV = 1e-9;

/// dE_Q/dε from Hellmann-Feynman: dE_k/dε = χ_kk / 2.
inline double deq_deps(const QubitEigenSystem& es, const ChiMatrix& chi) {
    if (qubit_energy(es) < degeneracy_tolerance_ueV)
        throw Error(ErrorKind::DegenerateLevels, "E1 - E0 below 1e-9 ueV, dE_Q/deps is ill-defined");
    return (chi(1, 1) - chi(0, 0)) / 2.0;
}

inline double deq_deps(const QubitParams& p) {
    const auto es = diagonalize(p);
    return deq_deps(es, chi_matrix(es));
}

enum class RegimeWarning { HamiltonianDominatedViolated, LevelsNearDegenerate };

constexpr std::string_view to_string(RegimeWarning w) noexcept {
    return w == RegimeWarning::HamiltonianDominatedViolated ? "HamiltonianDominatedViolated"
                                                            : "LevelsNearDegenerate";
}

inline constexpr double default_dominance_factor = 10.0;

/// Bloch-Redfield needs E_Q >> η k_B T; ">>" means a factor `dominance_factor`.
inline std::vector<RegimeWarning> validate_regime(const QubitEigenSystem& es, const BathParams& b,
                                                  const Temperature& t,
                                                  double dominance_factor = default_dominance_factor) {
    std::vector<RegimeWarning> out;
    const double eq = qubit_energy(es);
    if (eq < dominance_factor * b.eta * units::thermal_energy(t.kelvin))
        out.push_back(RegimeWarning::HamiltonianDominatedViolated);
    if (eq < 1e-6) out.push_back(RegimeWarning::LevelsNearDegenerate);
    return out;
}

inline std::vector<RegimeWarning> validate_regime(const QubitParams& p, const BathParams& b,
                                                  const Temperature& t,
                                                  double dominance_factor = default_dominance_factor) {
    return validate_regime(diagonalize(p), b, t, dominance_factor);
}

} // namespace dotphonon
