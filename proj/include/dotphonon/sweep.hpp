// 1D/2D parameter grids over compute_times, plus post-processing
//
// Rows are stored row-major with the first axis outermost. Grid points are
// evaluated concurrently but written by grid index, so the result does not
// depend on the thread count.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/qubit_model.hpp"
#include "dotphonon/redfield.hpp"

namespace dotphonon {

enum class AxisName { Eps, Delta1, Delta2, DeltaR, Temp, S, Eta };
enum class AxisScale { Linear, Log };

constexpr std::string_view to_string(AxisName n) noexcept {
    switch (n) {
        case AxisName::Eps: return "eps";
        case AxisName::Delta1: return "delta1";
        case AxisName::Delta2: return "delta2";
        case AxisName::DeltaR: return "deltaR";
        case AxisName::Temp: return "temp";
        case AxisName::S: return "s";
        case AxisName::Eta: return "eta";
    }
    return "";
}

constexpr std::string_view to_string(AxisScale s) noexcept { return s == AxisScale::Log ? "log" : "linear"; }

inline AxisName parse_axis_name(std::string_view s) {
    for (auto n : {AxisName::Eps, AxisName::Delta1, AxisName::Delta2, AxisName::DeltaR, AxisName::Temp,
                   AxisName::S, AxisName::Eta})
        if (to_string(n) == s) return n;
    throw Error(ErrorKind::InvalidAxis, "unknown axis name '" + std::string(s) + "'");
}

inline AxisScale parse_axis_scale(std::string_view s) {
    if (s == "linear") return AxisScale::Linear;
    if (s == "log") return AxisScale::Log;
    throw Error(ErrorKind::InvalidAxis, "axis scale must be 'linear' or 'log', got '" + std::string(s) + "'");
}

struct SweepAxis {
    AxisName name{AxisName::Eps};
    double start{};
    double stop{};
    std::size_t count{2};
    AxisScale scale{AxisScale::Linear};

    void validate() const {
        if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
            throw Error(ErrorKind::InvalidAxis, std::string(to_string(name)) + ": need finite start < stop");
        if (count < 2) throw Error(ErrorKind::InvalidAxis, std::string(to_string(name)) + ": count must be >= 2");
        if (scale == AxisScale::Log && !(start > 0.0))
            throw Error(ErrorKind::InvalidAxis, std::string(to_string(name)) + ": log scale needs start > 0");
    }

    /// Grid values; both endpoints are exact.
    std::vector<double> values() const {
        validate();
        std::vector<double> v(count);
        const double last = static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / last;
            v[i] = scale == AxisScale::Linear ? start + (stop - start) * f : start * std::pow(stop / start, f);
        }
        v.front() = start;
        v.back() = stop;
        return v;
    }

    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepRow {
    std::array<double, 2> values{std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};
    std::optional<RatesResult> result;
    std::optional<ErrorKind> error;
    std::string message;

    bool ok() const noexcept { return result.has_value(); }
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepRow> rows;
    QubitParams base_qubit;
    BathParams base_bath;
    Temperature base_temp;

    std::size_t error_count() const noexcept {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); }));
    }
};

struct SweepOptions {
    unsigned threads = 1;
    RateOptions rates{};
};

namespace detail {

struct Point {
    QubitParams qubit;
    BathParams bath;
    double kelvin;
};

inline void apply_axis(Point& p, AxisName name, double v) {
    switch (name) {
        case AxisName::Eps: p.qubit.eps = v; break;
        case AxisName::Delta1: p.qubit.delta1 = v; break;
        case AxisName::Delta2: p.qubit.delta2 = v; break;
        case AxisName::DeltaR: p.qubit.deltaR = v; break;
        case AxisName::Temp: p.kelvin = v; break;
        case AxisName::S: p.bath.s = v; break;
        case AxisName::Eta: p.bath.eta = v; break;
    }
}

} // namespace detail

inline SweepResult sweep(const QubitParams& base_qubit, const BathParams& base_bath, const Temperature& base_temp,
                         std::span<const SweepAxis> axes, const SweepOptions& opt = {}) {
    if (axes.empty()) throw Error(ErrorKind::EmptyGrid, "a sweep needs at least one axis");
    if (axes.size() > 2) throw Error(ErrorKind::InvalidAxis, "at most two sweep axes are supported");
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw Error(ErrorKind::InvalidAxis, "sweep axes must be distinct");

    std::vector<std::vector<double>> grids;
    for (const auto& a : axes) grids.push_back(a.values());
    const std::size_t inner = axes.size() == 2 ? grids[1].size() : 1;
    const std::size_t total = grids[0].size() * inner;

    SweepResult res{{axes.begin(), axes.end()}, std::vector<SweepRow>(total), base_qubit, base_bath, base_temp};

    auto evaluate = [&](std::size_t idx) {
        SweepRow& row = res.rows[idx];
        detail::Point p{base_qubit, base_bath, base_temp.kelvin};
        const std::size_t i = idx / inner, j = idx % inner;
        row.values[0] = grids[0][i];
        detail::apply_axis(p, axes[0].name, grids[0][i]);
        if (axes.size() == 2) {
            row.values[1] = grids[1][j];
            detail::apply_axis(p, axes[1].name, grids[1][j]);
        }
        try {
            row.result = compute_times(p.qubit, p.bath, Temperature(p.kelvin), opt.rates);
        } catch (const Error& e) {
            row.error = e.kind();
            row.message = e.what();
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(total)));
    if (n_threads == 1) {
        for (std::size_t idx = 0; idx < total; ++idx) evaluate(idx);
        return res;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t idx = next++; idx < total; idx = next++) evaluate(idx);
            });
    }
    return res;
}

// ------------------------------ Dephasing fit -------------------------------

struct LineFit {
    double slope{};
    double intercept{};
    double r2{};
    std::size_t n{};
};

/// Ordinary least squares y = slope·x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) throw Error(ErrorKind::InsufficientData, "need at least 3 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const bool flat = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    if (flat || !(sxx > 0.0)) throw Error(ErrorKind::InsufficientData, "regressor has zero variance");
    LineFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

/// Regresses 1/Tφ on (dE_Q/dε)² over every successful row with finite Tφ.
/// Expected: slope = π S(0), intercept = 0.
inline LineFit fit_dephasing_line(std::span<const SweepResult> results) {
    std::vector<double> x, y;
    for (const auto& res : results)
        for (const auto& row : res.rows) {
            if (!row.ok() || !std::isfinite(row.result->tphi_ns)) continue;
            x.push_back(row.result->deq_deps * row.result->deq_deps);
            y.push_back(1.0 / row.result->tphi_ns);
        }
    return fit_line(x, y);
}

inline LineFit fit_dephasing_line(const SweepResult& result) {
    return fit_dephasing_line(std::span<const SweepResult>(&result, 1));
}

// ------------------------------ Dephasing ridge -----------------------------

struct RidgePoint {
    double eps{};
    double deltaR{};
    double tphi_ns{};
    double chi_diag_diff{};
    bool interior{};      // maximum is not at either end of the Δ_R range
    bool sweet_spot{};    // |χ11 - χ00| < 0.05
};

inline constexpr double sweet_spot_threshold = 0.05;

/// Per ε column, the Δ_R of maximal Tφ (first index on ties).
inline std::vector<RidgePoint> find_dephasing_ridge(const SweepResult& res) {
    if (res.axes.size() != 2) throw Error(ErrorKind::NotA2DSweep, "ridge search needs a 2D sweep");
    const bool eps_first = res.axes[0].name == AxisName::Eps && res.axes[1].name == AxisName::DeltaR;
    const bool eps_second = res.axes[0].name == AxisName::DeltaR && res.axes[1].name == AxisName::Eps;
    if (!eps_first && !eps_second) throw Error(ErrorKind::NotA2DSweep, "ridge search needs eps x deltaR axes");

    const std::size_t n0 = res.axes[0].count, n1 = res.axes[1].count;
    const std::size_t n_eps = eps_first ? n0 : n1, n_dr = eps_first ? n1 : n0;
    auto at = [&](std::size_t ie, std::size_t ir) -> const SweepRow& {
        return eps_first ? res.rows[ie * n1 + ir] : res.rows[ir * n1 + ie];
    };

    std::vector<RidgePoint> out;
    for (std::size_t ie = 0; ie < n_eps; ++ie) {
        std::optional<std::size_t> best;
        for (std::size_t ir = 0; ir < n_dr; ++ir) {
            const SweepRow& row = at(ie, ir);
            if (!row.ok()) continue;
            if (!best || row.result->tphi_ns > at(ie, *best).result->tphi_ns) best = ir;
        }
        if (!best) continue;
        const SweepRow& row = at(ie, *best);
        RidgePoint p;
        p.eps = eps_first ? row.values[0] : row.values[1];
        p.deltaR = eps_first ? row.values[1] : row.values[0];
        p.tphi_ns = row.result->tphi_ns;
        p.chi_diag_diff = row.result->chi_diag_diff;
        p.interior = *best > 0 && *best + 1 < n_dr;
        p.sweet_spot = std::abs(p.chi_diag_diff) < sweet_spot_threshold;
        out.push_back(p);
    }
    return out;
}

} // namespace dotphonon
