// Fixed-schema CSV output for sweeps
//
// Columns (fixed order):
//   axis1_name, axis1_value, axis2_name, axis2_value, T1_ns, Tphi_ns, T2_ns,
//   EQ_ueV, dEQ_deps, chi10_sq, chi11_minus_chi00, status
// A missing second axis leaves its fields empty; error rows leave the numeric
// fields empty. Floats use the shortest round-trip decimal, infinities "inf".

#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>

#include "dotphonon/redfield.hpp"
#include "dotphonon/sweep.hpp"

namespace dotphonon::io {

inline constexpr std::string_view csv_header =
    "axis1_name,axis1_value,axis2_name,axis2_value,T1_ns,Tphi_ns,T2_ns,EQ_ueV,dEQ_deps,chi10_sq,"
    "chi11_minus_chi00,status";

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, end};
}

inline std::string row_status(const SweepRow& row) {
    if (!row.ok()) return "error:" + std::string(to_string(row.error.value_or(ErrorKind::InvalidParameter)));
    const auto& w = row.result->warnings;
    if (w.empty()) return "ok";
    std::string s = "warn:";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '|';
        s += to_string(w[i]);
    }
    return s;
}

inline void write_csv_row(std::ostream& os, const SweepResult& res, const SweepRow& row) {
    os << to_string(res.axes[0].name) << ',' << format_double(row.values[0]) << ',';
    if (res.axes.size() > 1) os << to_string(res.axes[1].name) << ',' << format_double(row.values[1]);
    else os << ',';
    if (row.ok()) {
        const RatesResult& r = *row.result;
        for (double v : {r.t1_ns, r.tphi_ns, r.t2_ns, r.eq_ueV, r.deq_deps, r.chi10_sq, r.chi_diag_diff})
            os << ',' << format_double(v);
    } else {
        os << ",,,,,,,";
    }
    os << ',' << row_status(row) << '\n';
}

inline void write_csv(std::ostream& os, const SweepResult& res) {
    os << csv_header << '\n';
    for (const auto& row : res.rows) write_csv_row(os, res, row);
}

} // namespace dotphonon::io
