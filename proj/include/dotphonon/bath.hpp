// Bosonic bath: spectral density, thermal power spectrum, S(0) limits
//
// J(ω) = η ω^s / ω_c^(s-1) · exp(-ω/ω_c), ω in rad/ns.
// s = 1 Ohmic, s > 1 super-Ohmic, s < 1 sub-Ohmic.

#pragma once

#include <cmath>
#include <optional>

#include "dotphonon/error.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon {

struct Temperature {
    double kelvin{0.1};

    Temperature() = default;
    explicit Temperature(double k) : kelvin(k) {
        if (!std::isfinite(k) || !(k > 0.0))
            throw Error(ErrorKind::InvalidParameter, "temperature must be finite and > 0 K");
    }

    /// β in 1/μeV.
    double beta() const noexcept { return 1.0 / units::thermal_energy(kelvin); }

    friend bool operator==(const Temperature&, const Temperature&) = default;
};

struct BathParams {
    double s{1.0};             // regime exponent
    double eta{0.5};           // dimensionless coupling
    double omega_c{};          // high-energy cutoff, rad/ns
    double omega_cutoff{};     // low-frequency cutoff, rad/ns
    std::optional<double> omega_eval;  // frequency for the non-Ohmic S(0) forms; defaults to omega_cutoff

    void validate() const {
        auto bad = [](const char* msg) { throw Error(ErrorKind::InvalidParameter, msg); };
        if (!std::isfinite(s) || !(s > 0.0 && s <= 4.0)) bad("s must lie in (0, 4]");
        if (!std::isfinite(eta) || eta < 0.0) bad("eta must be finite and >= 0");
        if (!std::isfinite(omega_c) || !(omega_c > 0.0)) bad("omega_c must be finite and > 0");
        if (!std::isfinite(omega_cutoff) || !(omega_cutoff > 0.0))
            bad("omega_cutoff must be finite and > 0");
        if (!(omega_cutoff < omega_c)) bad("omega_cutoff must be below omega_c");
        if (omega_eval && (!std::isfinite(*omega_eval) || !(*omega_eval > 0.0)))
            bad("omega_eval must be finite and > 0");
    }

    double evaluation_frequency() const noexcept { return omega_eval.value_or(omega_cutoff); }

    friend bool operator==(const BathParams&, const BathParams&) = default;
};

enum class BathRegime { SubOhmic, Ohmic, SuperOhmic };

inline BathRegime regime_of(const BathParams& b) noexcept {
    if (b.s == 1.0) return BathRegime::Ohmic;
    return b.s > 1.0 ? BathRegime::SuperOhmic : BathRegime::SubOhmic;
}

/// coth(x) with the tails pinned: 1 beyond x = 20, Laurent series below 1e-6.
inline double stable_coth(double x) noexcept {
    const double ax = std::abs(x);
    double v;
    if (ax > 20.0)
        v = 1.0;
    else if (ax < 1e-6)
        v = 1.0 / ax + ax / 3.0;
    else
        v = 1.0 / std::tanh(ax);
    return x < 0.0 ? -v : v;
}

inline double spectral_density(const BathParams& b, double omega) {
    if (omega < 0.0) throw Error(ErrorKind::NegativeFrequency, "J(omega) is defined for omega >= 0");
    if (omega == 0.0) return 0.0;
    return b.eta * std::pow(omega, b.s) / std::pow(b.omega_c, b.s - 1.0) * std::exp(-omega / b.omega_c);
}

/// Bose-Einstein occupation 1/(exp(βħω) - 1).
inline double thermal_occupation(const Temperature& t, double omega) {
    if (!(omega > 0.0))
        throw Error(ErrorKind::NonPositiveFrequency, "occupation needs omega > 0");
    return 1.0 / std::expm1(t.beta() * units::omega_to_energy(omega));
}

/// S(ω) = ½ J(|ω|) [coth(βħ|ω|/2) ± 1], + for emission (ω > 0), - for
/// absorption (ω < 0). Evaluated as J·(n+1) and J·n so that detailed balance
/// holds to rounding at every temperature.
inline double power_spectrum(const BathParams& b, const Temperature& t, double omega) {
    if (std::abs(omega) < 1e-15)
        throw Error(ErrorKind::ZeroFrequency, "use power_spectrum_zero for omega -> 0");
    const double w = std::abs(omega);
    const double j = spectral_density(b, w);
    const double n = thermal_occupation(t, w);
    return omega > 0.0 ? j * (n + 1.0) : j * n;
}

/// First-order low-frequency limit of S used for pure dephasing.
///   Ohmic:        η k_B T / ħ
///   super-Ohmic:  η ω_eval k_B T / (ħ ω_c)
///   sub-Ohmic:    η ω_cutoff k_B T / (ħ ω_eval)   (constant-J reading)
inline double power_spectrum_zero(const BathParams& b, const Temperature& t) {
    const double kt_over_hbar = units::energy_to_omega(units::thermal_energy(t.kelvin));
    switch (regime_of(b)) {
        case BathRegime::Ohmic:
            return b.eta * kt_over_hbar;
        case BathRegime::SuperOhmic:
            return b.eta * b.evaluation_frequency() * kt_over_hbar / b.omega_c;
        case BathRegime::SubOhmic:
            return b.eta * b.omega_cutoff * kt_over_hbar / b.evaluation_frequency();
    }
    return 0.0;
}

} // namespace dotphonon
