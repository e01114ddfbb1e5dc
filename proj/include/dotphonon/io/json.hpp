// JSON views of results (nlohmann::json)

#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "dotphonon/io/csv.hpp"
#include "dotphonon/redfield.hpp"
#include "dotphonon/sweep.hpp"

namespace dotphonon::io {

// JSON has no infinity; times that diverge are written as the string "inf".
inline nlohmann::json number_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

inline nlohmann::json to_json(const RatesResult& r) {
    nlohmann::json warnings = nlohmann::json::array();
    for (auto w : r.warnings) warnings.push_back(std::string(to_string(w)));
    return {
        {"T1_ns", number_or_inf(r.t1_ns)},
        {"Tphi_ns", number_or_inf(r.tphi_ns)},
        {"T2_ns", number_or_inf(r.t2_ns)},
        {"EQ_ueV", r.eq_ueV},
        {"dEQ_deps", r.deq_deps},
        {"chi10_sq", r.chi10_sq},
        {"chi11_minus_chi00", r.chi_diag_diff},
        {"S_EQ", r.s_eq},
        {"S_zero", r.s_zero},
        {"warnings", warnings},
    };
}

inline nlohmann::json to_json(const SweepResult& res) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& a : res.axes)
        axes.push_back({{"name", std::string(to_string(a.name))},
                        {"start", a.start},
                        {"stop", a.stop},
                        {"count", a.count},
                        {"scale", std::string(to_string(a.scale))}});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : res.rows) {
        nlohmann::json j;
        j["values"] = res.axes.size() == 2 ? nlohmann::json::array({row.values[0], row.values[1]})
                                           : nlohmann::json::array({row.values[0]});
        j["status"] = row_status(row);
        if (row.ok()) j["result"] = to_json(*row.result);
        else j["message"] = row.message;
        rows.push_back(std::move(j));
    }
    return {{"axes", axes}, {"rows", rows}};
}

} // namespace dotphonon::io
