// Exception type shared by every dotphonon module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dotphonon {

enum class ErrorKind {
    InvalidParameter,
    NonFinite,
    DegenerateLevels,
    NegativeFrequency,
    ZeroFrequency,
    NonPositiveFrequency,
    NonPositiveQubitEnergy,
    InvalidDiscretization,
    WindowTooShort,
    InvalidAxis,
    EmptyGrid,
    InsufficientData,
    NotA2DSweep,
    InvalidConfig,
    Io,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::DegenerateLevels: return "DegenerateLevels";
        case ErrorKind::NegativeFrequency: return "NegativeFrequency";
        case ErrorKind::ZeroFrequency: return "ZeroFrequency";
        case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
        case ErrorKind::NonPositiveQubitEnergy: return "NonPositiveQubitEnergy";
        case ErrorKind::InvalidDiscretization: return "InvalidDiscretization";
        case ErrorKind::WindowTooShort: return "WindowTooShort";
        case ErrorKind::InvalidAxis: return "InvalidAxis";
        case ErrorKind::EmptyGrid: return "EmptyGrid";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::NotA2DSweep: return "NotA2DSweep";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace dotphonon
