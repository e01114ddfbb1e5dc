// The Si/SiGe reference operating point

#pragma once

#include "dotphonon/bath.hpp"
#include "dotphonon/qubit_model.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon::presets {

inline constexpr double eta = 0.5;
inline constexpr double omega_c_factor = 10.0;  // ω_c = 10 Δ1 / ħ
inline constexpr double f_cutoff_hz = 1.0;      // ω_cutoff / 2π

inline QubitParams reference_qubit() noexcept { return {}; }

inline BathParams make_bath(const QubitParams& q, double s, double eta_value = eta,
                            double omega_c_multiple = omega_c_factor,
                            double f_cutoff = f_cutoff_hz) {
    BathParams b;
    b.s = s;
    b.eta = eta_value;
    b.omega_c = units::energy_to_omega(omega_c_multiple * q.delta1);
    b.omega_cutoff = units::hz_to_omega(f_cutoff);
    return b;
}

inline BathParams reference_bath(double s = 1.0) { return make_bath(reference_qubit(), s); }

} // namespace dotphonon::presets
