// Physical constants in the (μeV, ns, K) unit system
//
// Energies are carried in μeV, times in ns, temperatures in K and angular
// frequencies in rad/ns. Energy <-> frequency conversion happens only through
// the helpers below.

#pragma once

#include <numbers>

namespace dotphonon::units {

inline constexpr double hbar_ueV_ns = 0.6582119569;  // ħ in μeV·ns
inline constexpr double kB_ueV_per_K = 86.17333262;  // k_B in μeV/K

constexpr double energy_to_omega(double energy_ueV) noexcept { return energy_ueV / hbar_ueV_ns; }
constexpr double omega_to_energy(double omega) noexcept { return omega * hbar_ueV_ns; }

/// Thermal energy k_B T in μeV.
constexpr double thermal_energy(double kelvin) noexcept { return kB_ueV_per_K * kelvin; }

/// Ordinary frequency in Hz to angular frequency in rad/ns.
constexpr double hz_to_omega(double hz) noexcept { return 2.0 * std::numbers::pi * hz * 1e-9; }

} // namespace dotphonon::units
