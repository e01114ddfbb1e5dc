// Run configuration: JSON recipe files, validation, run expansion
//
// A recipe is a JSON object. Every key is optional and falls back to the
// Si/SiGe reference point; unknown keys are rejected. "runs" holds partial
// configs merged (RFC 7386) over the base, and a multi-valued "temp" fans each
// run out once per temperature.

#pragma once

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/io/csv.hpp"
#include "dotphonon/presets.hpp"
#include "dotphonon/qubit_model.hpp"
#include "dotphonon/redfield.hpp"
#include "dotphonon/sweep.hpp"
#include "dotphonon/units.hpp"

namespace dotphonon {

struct BathConfig {
    double s = 1.0;
    double eta = presets::eta;
    double omega_c_factor = presets::omega_c_factor;  // ω_c = factor · Δ1 / ħ
    std::optional<double> omega_c;                    // explicit rad/ns, overrides the factor
    double f_cutoff_hz = presets::f_cutoff_hz;

    friend bool operator==(const BathConfig&, const BathConfig&) = default;
};

enum class OutputFormat { Csv, Json };
enum class PlotKind { Line, Heatmap, DephasingFit };

constexpr std::string_view to_string(PlotKind k) noexcept {
    switch (k) {
        case PlotKind::Line: return "line";
        case PlotKind::Heatmap: return "heatmap";
        case PlotKind::DephasingFit: return "dephasing_fit";
    }
    return "";
}

struct PlotConfig {
    std::optional<PlotKind> kind;  // chosen from the sweep dimension when unset
    std::vector<std::string> metrics{"T1", "Tphi", "T2"};
    bool ylog = true;

    friend bool operator==(const PlotConfig&, const PlotConfig&) = default;
};

struct RunPatch {
    std::string label;
    nlohmann::json body = nlohmann::json::object();

    friend bool operator==(const RunPatch&, const RunPatch&) = default;
};

struct RunConfig {
    QubitParams qubit = presets::reference_qubit();
    BathConfig bath;
    std::vector<double> temp{0.1};
    std::optional<double> omega_eval;
    double regime_factor = default_dominance_factor;
    std::vector<SweepAxis> sweep;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    std::optional<PlotConfig> plot;
    bool fit_dephasing = false;
    bool ridge = false;
    std::vector<RunPatch> runs;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// ------------------------------ Metrics -------------------------------------

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"T1",       "Tphi",    "T2",   "EQ",     "dEQ_deps", "chi10_sq",
                                                "chi11_minus_chi00", "S_EQ", "S_zero", "rate_phi"};
    return names;
}

inline double metric_value(const RatesResult& r, std::string_view name) {
    if (name == "T1") return r.t1_ns;
    if (name == "Tphi") return r.tphi_ns;
    if (name == "T2") return r.t2_ns;
    if (name == "EQ") return r.eq_ueV;
    if (name == "dEQ_deps") return r.deq_deps;
    if (name == "chi10_sq") return r.chi10_sq;
    if (name == "chi11_minus_chi00") return r.chi_diag_diff;
    if (name == "S_EQ") return r.s_eq;
    if (name == "S_zero") return r.s_zero;
    if (name == "rate_phi") return 1.0 / r.tphi_ns;
    throw Error(ErrorKind::InvalidConfig, "unknown metric '" + std::string(name) + "'");
}

inline std::string metric_label(std::string_view name) {
    if (name == "T1" || name == "Tphi" || name == "T2") return std::string(name) + " (ns)";
    if (name == "EQ") return "E_Q (ueV)";
    if (name == "S_EQ" || name == "S_zero") return std::string(name) + " (rad/ns)";
    if (name == "rate_phi") return "1/Tphi (1/ns)";
    return std::string(name);
}

inline std::string axis_label(AxisName n) {
    switch (n) {
        case AxisName::Eps: return "eps (ueV)";
        case AxisName::Delta1: return "Delta1 (ueV)";
        case AxisName::Delta2: return "Delta2 (ueV)";
        case AxisName::DeltaR: return "DeltaR (ueV)";
        case AxisName::Temp: return "T (K)";
        case AxisName::S: return "s";
        case AxisName::Eta: return "eta";
    }
    return "";
}

// ------------------------------ Parsing -------------------------------------

namespace detail {

[[noreturn]] inline void config_error(const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); }

inline void require_keys(const nlohmann::json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) config_error(std::string(where) + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (auto a : allowed) known = known || it.key() == a;
        if (!known) config_error("unknown key '" + it.key() + "' in " + std::string(where));
    }
}

inline double get_number(const nlohmann::json& j, std::string_view key) {
    const auto& v = j.at(std::string(key));
    if (!v.is_number()) config_error("'" + std::string(key) + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error("'" + std::string(key) + "' must be finite");
    return d;
}

template <class T>
void read(const nlohmann::json& j, std::string_view key, T& out) {
    if (!j.contains(std::string(key))) return;
    if constexpr (std::is_same_v<T, double>) {
        out = get_number(j, key);
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
        if (j.at(std::string(key)).is_null()) out.reset();
        else out = get_number(j, key);
    } else if constexpr (std::is_same_v<T, bool>) {
        if (!j.at(std::string(key)).is_boolean()) config_error("'" + std::string(key) + "' must be a boolean");
        out = j.at(std::string(key)).get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!j.at(std::string(key)).is_string()) config_error("'" + std::string(key) + "' must be a string");
        out = j.at(std::string(key)).get<std::string>();
    }
}

inline SweepAxis parse_axis(const nlohmann::json& j) {
    require_keys(j, "sweep axis", {"name", "start", "stop", "count", "scale"});
    for (auto k : {"name", "start", "stop", "count"})
        if (!j.contains(k)) config_error(std::string("sweep axis is missing '") + k + "'");
    SweepAxis a;
    std::string name, scale = "linear";
    read(j, "name", name);
    read(j, "scale", scale);
    try {
        a.name = parse_axis_name(name);
        a.scale = parse_axis_scale(scale);
    } catch (const Error& e) {
        config_error(e.what());
    }
    a.start = get_number(j, "start");
    a.stop = get_number(j, "stop");
    if (!j.at("count").is_number_integer() || j.at("count").get<long long>() < 0)
        config_error("axis 'count' must be a non-negative integer");
    a.count = j.at("count").get<std::size_t>();
    return a;
}

inline RunConfig parse_body(const nlohmann::json& j, bool allow_runs) {
    if (allow_runs)
        require_keys(j, "config", {"qubit", "bath", "temp", "omega_eval", "regime_factor", "sweep", "output", "plot",
                                   "fit_dephasing", "ridge", "runs"});
    else
        require_keys(j, "run", {"label", "qubit", "bath", "temp", "omega_eval", "regime_factor", "sweep", "output",
                                "plot", "fit_dephasing", "ridge"});
    RunConfig c;
    if (j.contains("qubit")) {
        const auto& q = j.at("qubit");
        require_keys(q, "qubit", {"eps", "delta1", "delta2", "deltaR"});
        read(q, "eps", c.qubit.eps);
        read(q, "delta1", c.qubit.delta1);
        read(q, "delta2", c.qubit.delta2);
        read(q, "deltaR", c.qubit.deltaR);
    }
    if (j.contains("bath")) {
        const auto& b = j.at("bath");
        require_keys(b, "bath", {"s", "eta", "omega_c_factor", "omega_c", "f_cutoff_hz"});
        read(b, "s", c.bath.s);
        read(b, "eta", c.bath.eta);
        read(b, "omega_c_factor", c.bath.omega_c_factor);
        read(b, "omega_c", c.bath.omega_c);
        read(b, "f_cutoff_hz", c.bath.f_cutoff_hz);
    }
    if (j.contains("temp")) {
        const auto& t = j.at("temp");
        c.temp.clear();
        if (t.is_array()) {
            for (const auto& v : t) {
                if (!v.is_number()) config_error("'temp' entries must be numbers");
                c.temp.push_back(v.get<double>());
            }
        } else {
            c.temp.push_back(get_number(j, "temp"));
        }
    }
    read(j, "omega_eval", c.omega_eval);
    read(j, "regime_factor", c.regime_factor);
    if (j.contains("sweep")) {
        if (!j.at("sweep").is_array()) config_error("'sweep' must be an array of axes");
        for (const auto& a : j.at("sweep")) c.sweep.push_back(parse_axis(a));
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        require_keys(o, "output", {"path", "format"});
        read(o, "path", c.output_path);
        std::string fmt = "csv";
        read(o, "format", fmt);
        if (fmt == "csv") c.format = OutputFormat::Csv;
        else if (fmt == "json") c.format = OutputFormat::Json;
        else config_error("output format must be 'csv' or 'json'");
    }
    if (j.contains("plot") && !j.at("plot").is_null()) {
        const auto& p = j.at("plot");
        require_keys(p, "plot", {"kind", "metrics", "ylog"});
        PlotConfig pc;
        if (p.contains("kind") && !p.at("kind").is_null()) {
            std::string k;
            read(p, "kind", k);
            if (k == "line") pc.kind = PlotKind::Line;
            else if (k == "heatmap") pc.kind = PlotKind::Heatmap;
            else if (k == "dephasing_fit") pc.kind = PlotKind::DephasingFit;
            else config_error("plot kind must be line, heatmap or dephasing_fit");
        }
        if (p.contains("metrics")) {
            if (!p.at("metrics").is_array()) config_error("plot 'metrics' must be an array");
            pc.metrics.clear();
            for (const auto& m : p.at("metrics")) {
                if (!m.is_string()) config_error("plot metrics must be strings");
                pc.metrics.push_back(m.get<std::string>());
            }
        }
        read(p, "ylog", pc.ylog);
        c.plot = pc;
    }
    read(j, "fit_dephasing", c.fit_dephasing);
    read(j, "ridge", c.ridge);
    if (allow_runs && j.contains("runs")) {
        if (!j.at("runs").is_array()) config_error("'runs' must be an array");
        for (const auto& r : j.at("runs")) {
            if (!r.is_object()) config_error("each run must be an object");
            require_keys(r, "run", {"label", "qubit", "bath", "temp", "omega_eval", "regime_factor", "sweep", "output",
                                    "plot", "fit_dephasing", "ridge"});
            RunPatch rp;
            read(r, "label", rp.label);
            rp.body = r;
            rp.body.erase("label");
            c.runs.push_back(std::move(rp));
        }
    }
    return c;
}

} // namespace detail

inline nlohmann::json to_json(const RunConfig& c, bool include_runs = true) {
    nlohmann::json j;
    j["qubit"] = {{"eps", c.qubit.eps}, {"delta1", c.qubit.delta1}, {"delta2", c.qubit.delta2}, {"deltaR", c.qubit.deltaR}};
    j["bath"] = {{"s", c.bath.s},
                 {"eta", c.bath.eta},
                 {"omega_c_factor", c.bath.omega_c_factor},
                 {"f_cutoff_hz", c.bath.f_cutoff_hz}};
    if (c.bath.omega_c) j["bath"]["omega_c"] = *c.bath.omega_c;
    j["temp"] = c.temp;
    if (c.omega_eval) j["omega_eval"] = *c.omega_eval;
    j["regime_factor"] = c.regime_factor;
    j["sweep"] = nlohmann::json::array();
    for (const auto& a : c.sweep)
        j["sweep"].push_back({{"name", std::string(to_string(a.name))},
                              {"start", a.start},
                              {"stop", a.stop},
                              {"count", a.count},
                              {"scale", std::string(to_string(a.scale))}});
    j["output"] = {{"path", c.output_path}, {"format", c.format == OutputFormat::Json ? "json" : "csv"}};
    if (c.plot) {
        j["plot"] = {{"metrics", c.plot->metrics}, {"ylog", c.plot->ylog}};
        if (c.plot->kind) j["plot"]["kind"] = std::string(to_string(*c.plot->kind));
    }
    j["fit_dephasing"] = c.fit_dephasing;
    j["ridge"] = c.ridge;
    if (include_runs && !c.runs.empty()) {
        j["runs"] = nlohmann::json::array();
        for (const auto& r : c.runs) {
            nlohmann::json rj = r.body;
            rj["label"] = r.label;
            j["runs"].push_back(std::move(rj));
        }
    }
    return j;
}

/// Field-level checks that need no computation. Bath parameters derived from
/// Δ1 are checked at evaluation time.
inline void validate(const RunConfig& c) {
    auto bad = [](const std::string& m) { detail::config_error(m); };
    try {
        c.qubit.validate();
    } catch (const Error& e) {
        bad(e.what());
    }
    if (!(c.bath.s > 0.0 && c.bath.s <= 4.0)) bad("bath.s must lie in (0, 4]");
    if (!(c.bath.eta >= 0.0)) bad("bath.eta must be >= 0");
    if (!(c.bath.omega_c_factor > 0.0)) bad("bath.omega_c_factor must be > 0");
    if (c.bath.omega_c && !(*c.bath.omega_c > 0.0)) bad("bath.omega_c must be > 0");
    if (!(c.bath.f_cutoff_hz > 0.0)) bad("bath.f_cutoff_hz must be > 0");
    if (c.temp.empty()) bad("'temp' must not be empty");
    for (double t : c.temp)
        if (!std::isfinite(t) || !(t > 0.0)) bad("temperatures must be finite and > 0 K");
    if (c.omega_eval && !(*c.omega_eval > 0.0)) bad("omega_eval must be > 0");
    if (!(c.regime_factor > 0.0)) bad("regime_factor must be > 0");
    if (c.sweep.size() > 2) bad("at most two sweep axes");
    try {
        for (const auto& a : c.sweep) a.validate();
    } catch (const Error& e) {
        bad(e.what());
    }
    if (c.sweep.size() == 2 && c.sweep[0].name == c.sweep[1].name) bad("sweep axes must be distinct");
    if (c.plot)
        for (const auto& m : c.plot->metrics) {
            bool known = false;
            for (const auto& n : metric_names()) known = known || n == m;
            if (!known) bad("unknown plot metric '" + m + "'");
        }
}

inline RunConfig parse_config(const nlohmann::json& j) {
    RunConfig c = detail::parse_body(j, true);
    validate(c);
    return c;
}

inline RunConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    try {
        return parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline std::string dump_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

// ------------------------------ Run expansion -------------------------------

inline BathParams make_bath(const RunConfig& c) {
    BathParams b;
    b.s = c.bath.s;
    b.eta = c.bath.eta;
    b.omega_c = c.bath.omega_c.value_or(units::energy_to_omega(c.bath.omega_c_factor * c.qubit.delta1));
    b.omega_cutoff = units::hz_to_omega(c.bath.f_cutoff_hz);
    b.omega_eval = c.omega_eval;
    return b;
}

/// One concrete evaluation: a base point, its temperature, and the sweep axes.
struct ResolvedRun {
    std::string label;
    RunConfig config;  // with exactly one temperature
    QubitParams qubit;
    BathParams bath;
    Temperature temp;
};

inline std::string temp_label(double kelvin) { return "T" + io::format_double(kelvin) + "K"; }

inline std::vector<ResolvedRun> resolve_runs(const RunConfig& c) {
    std::vector<RunPatch> patches = c.runs;
    if (patches.empty()) patches.push_back({});
    const nlohmann::json base = to_json(c, false);

    std::vector<ResolvedRun> out;
    for (const auto& p : patches) {
        nlohmann::json merged = base;
        merged.merge_patch(p.body);
        RunConfig rc;
        try {
            rc = detail::parse_body(merged, false);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidConfig, "run '" + p.label + "': " + e.what());
        }
        validate(rc);
        for (double t : rc.temp) {
            ResolvedRun r;
            r.label = p.label;
            if (rc.temp.size() > 1) r.label += (r.label.empty() ? "" : "_") + temp_label(t);
            r.config = rc;
            r.config.temp = {t};
            r.qubit = rc.qubit;
            r.bath = make_bath(rc);
            r.temp = Temperature(t);
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace dotphonon
