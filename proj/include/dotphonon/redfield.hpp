// Bloch-Redfield relaxation, pure-dephasing and decoherence times
//
//   1/T1   = (π/2) χ10² S(E_Q/ħ)
//   1/Tφ   = (π/4) (χ11 - χ00)² S(0)
//   1/T2   = 1/(2 T1) + 1/Tφ
//
// Rates in 1/ns, times in ns; a vanishing rate gives an infinite time.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/qubit_model.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon {

struct RatesResult {
    double t1_ns{};
    double tphi_ns{};
    double t2_ns{};
    double eq_ueV{};
    double deq_deps{};
    double chi10_sq{};
    double chi_diag_diff{};  // χ11 - χ00
    double s_eq{};           // S(E_Q/ħ), rad/ns
    double s_zero{};         // S(0), rad/ns
    std::vector<RegimeWarning> warnings;
};

struct RateOptions {
    double dominance_factor = default_dominance_factor;
};

inline double relaxation_rate(const ChiMatrix& chi, double eq_ueV, const BathParams& b,
                              const Temperature& t) {
    if (!(eq_ueV > 0.0))
        throw Error(ErrorKind::NonPositiveQubitEnergy, "relaxation needs E_Q > 0");
    const double chi10 = chi(1, 0);
    return std::numbers::pi / 2.0 * chi10 * chi10 *
           power_spectrum(b, t, units::energy_to_omega(eq_ueV));
}

inline double dephasing_rate(const ChiMatrix& chi, const BathParams& b, const Temperature& t) {
    const double d = chi(1, 1) - chi(0, 0);
    return std::numbers::pi / 4.0 * d * d * power_spectrum_zero(b, t);
}

inline double rate_to_time(double rate) noexcept {
    return rate == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / rate;
}

inline double decoherence_time(double t1_ns, double tphi_ns) {
    if (!(t1_ns > 0.0) || !(tphi_ns > 0.0))
        throw Error(ErrorKind::InvalidParameter, "T1 and Tphi must be > 0");
    return rate_to_time(1.0 / (2.0 * t1_ns) + 1.0 / tphi_ns);
}

inline RatesResult compute_times(const QubitParams& p, const BathParams& b, const Temperature& t,
                                 const RateOptions& opt = {}) {
    const QubitEigenSystem es = diagonalize(p);
    const ChiMatrix chi = chi_matrix(es);

    RatesResult r;
    r.eq_ueV = qubit_energy(es);
    r.deq_deps = deq_deps(es, chi);
    b.validate();
    r.chi10_sq = chi(1, 0) * chi(1, 0);
    r.chi_diag_diff = chi(1, 1) - chi(0, 0);
    r.s_eq = power_spectrum(b, t, units::energy_to_omega(r.eq_ueV));
    r.s_zero = power_spectrum_zero(b, t);
    r.t1_ns = rate_to_time(relaxation_rate(chi, r.eq_ueV, b, t));
    r.tphi_ns = rate_to_time(dephasing_rate(chi, b, t));
    r.t2_ns = decoherence_time(r.t1_ns, r.tphi_ns);
    r.warnings = validate_regime(es, b, t, opt.dominance_factor);
    return r;
}

} // namespace dotphonon
