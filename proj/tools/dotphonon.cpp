// dotphonon: phonon-limited T1 / Tphi / T2 of a double-dot hybrid qubit
//
//   dotphonon times    [options]   single operating point
//   dotphonon sweep    [options]   1D/2D grids -> CSV/JSON (+ SVG)
//   dotphonon spectrum [options]   J(w), S(w) and optionally the discrete-bath oracle
//   dotphonon validate [options]   check a config and report regime warnings
//
// Exit codes: 0 success, 2 invalid config, 3 compute error, 4 I/O error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dotphonon/config.hpp"
#include "dotphonon/dotphonon.hpp"
#include "dotphonon/io/csv.hpp"
#include "dotphonon/io/json.hpp"
#include "dotphonon/io/svg.hpp"
#include "dotphonon/oracle.hpp"

namespace dp = dotphonon;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;
constexpr int kExitIo = 4;

int exit_code_for(dp::ErrorKind k) {
    switch (k) {
        case dp::ErrorKind::InvalidConfig:
        case dp::ErrorKind::InvalidParameter:
        case dp::ErrorKind::InvalidAxis:
        case dp::ErrorKind::EmptyGrid:
        case dp::ErrorKind::InvalidDiscretization:
        case dp::ErrorKind::WindowTooShort:
        case dp::ErrorKind::NotA2DSweep:
            return kExitConfig;
        case dp::ErrorKind::Io:
            return kExitIo;
        default:
            return kExitCompute;
    }
}

// Command-line overrides layered on top of the config file.
struct Overrides {
    std::string config_path;
    std::string dump_config;
    std::optional<double> eps, d1, d2, dr, eta, s, omega_c_factor, omega_c, f_cutoff, omega_eval, regime_factor;
    std::vector<double> temp;
    std::vector<std::string> axes;
    std::optional<std::string> output, format, plot;
    std::vector<std::string> metrics;
    bool fit_dephasing = false;
    bool ridge = false;
    std::optional<unsigned> threads;
};

struct SpectrumOptions {
    double grid_min = -5.0;
    double grid_max = 5.0;
    std::size_t grid_points = 101;
    std::size_t oracle_modes = 0;
    double window_ns = 6.0;
    double bin_width = 4.0;
};

void add_common_options(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_path, "JSON recipe file");
    cmd.add_option("--dump-config", o.dump_config, "Write the effective config to PATH ('-' for stdout) and exit");
    cmd.add_option("--eps", o.eps, "Detuning epsilon (ueV)");
    cmd.add_option("--d1", o.d1, "Tunnel coupling Delta1 (ueV)");
    cmd.add_option("--d2", o.d2, "Tunnel coupling Delta2 (ueV)");
    cmd.add_option("--dr", o.dr, "Right-dot splitting DeltaR (ueV)");
    cmd.add_option("--eta", o.eta, "Bath coupling eta");
    cmd.add_option("--s", o.s, "Spectral exponent s (1 Ohmic)");
    cmd.add_option("--temp", o.temp, "Bath temperature(s) in K");
    cmd.add_option("--omega-c-factor", o.omega_c_factor, "omega_c as a multiple of Delta1 (default 10)");
    cmd.add_option("--omega-c", o.omega_c, "Explicit omega_c in rad/ns (overrides the factor)");
    cmd.add_option("--f-cutoff", o.f_cutoff, "Low-frequency cutoff omega_cutoff/2pi in Hz");
    cmd.add_option("--omega-eval", o.omega_eval, "Frequency (rad/ns) for the non-Ohmic S(0) forms");
    cmd.add_option("--regime-factor", o.regime_factor, "Factor quantifying E_Q >> eta k_B T (default 10)");
    cmd.add_option("--axis", o.axes, "Sweep axis name:start:stop:count[:linear|log] (repeat for 2D)");
    cmd.add_option("--output", o.output, "Output path");
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--plot", o.plot, "Emit a plot")->check(CLI::IsMember({"svg"}));
    cmd.add_option("--metrics", o.metrics, "Plot metrics (T1 Tphi T2 EQ dEQ_deps chi10_sq ...)");
    cmd.add_flag("--fit-dephasing", o.fit_dephasing, "Fit 1/Tphi against (dE_Q/deps)^2");
    cmd.add_flag("--ridge", o.ridge, "Report the Tphi ridge of an eps x deltaR sweep");
    cmd.add_option("--threads", o.threads, "Worker threads (fallback: DOTPHONON_THREADS)");
}

dp::SweepAxis parse_axis_flag(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 4 || parts.size() > 5)
        throw dp::Error(dp::ErrorKind::InvalidConfig, "axis must be name:start:stop:count[:scale], got '" + text + "'");
    try {
        dp::SweepAxis a;
        a.name = dp::parse_axis_name(parts[0]);
        std::size_t used = 0;
        a.start = std::stod(parts[1]);
        a.stop = std::stod(parts[2]);
        const long long n = std::stoll(parts[3], &used);
        if (used != parts[3].size() || n < 0) throw std::invalid_argument("count");
        a.count = static_cast<std::size_t>(n);
        if (parts.size() == 5) a.scale = dp::parse_axis_scale(parts[4]);
        return a;
    } catch (const dp::Error& e) {
        throw dp::Error(dp::ErrorKind::InvalidConfig, e.what());
    } catch (const std::exception&) {
        throw dp::Error(dp::ErrorKind::InvalidConfig, "malformed axis '" + text + "'");
    }
}

dp::RunConfig build_config(const Overrides& o) {
    dp::RunConfig c = o.config_path.empty() ? dp::RunConfig{} : dp::load_config(o.config_path);
    if (o.eps) c.qubit.eps = *o.eps;
    if (o.d1) c.qubit.delta1 = *o.d1;
    if (o.d2) c.qubit.delta2 = *o.d2;
    if (o.dr) c.qubit.deltaR = *o.dr;
    if (o.eta) c.bath.eta = *o.eta;
    if (o.s) c.bath.s = *o.s;
    if (o.omega_c_factor) c.bath.omega_c_factor = *o.omega_c_factor;
    if (o.omega_c) c.bath.omega_c = *o.omega_c;
    if (o.f_cutoff) c.bath.f_cutoff_hz = *o.f_cutoff;
    if (o.omega_eval) c.omega_eval = *o.omega_eval;
    if (o.regime_factor) c.regime_factor = *o.regime_factor;
    if (!o.temp.empty()) c.temp = o.temp;
    if (!o.axes.empty()) {
        c.sweep.clear();
        for (const auto& a : o.axes) c.sweep.push_back(parse_axis_flag(a));
    }
    if (o.output) c.output_path = *o.output;
    if (o.format) c.format = *o.format == "json" ? dp::OutputFormat::Json : dp::OutputFormat::Csv;
    if (o.plot && !c.plot) c.plot = dp::PlotConfig{};
    if (!o.metrics.empty()) {
        if (!c.plot) c.plot = dp::PlotConfig{};
        c.plot->metrics = o.metrics;
    }
    if (o.fit_dephasing) c.fit_dephasing = true;
    if (o.ridge) c.ridge = true;
    dp::validate(c);
    return c;
}

unsigned thread_count(const Overrides& o) {
    if (o.threads) return std::max(1u, *o.threads);
    if (const char* env = std::getenv("DOTPHONON_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid DOTPHONON_THREADS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dp::Error(dp::ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw dp::Error(dp::ErrorKind::Io, "failed writing '" + path.string() + "'");
}

// out.csv + label -> out_label.csv
fs::path derived_path(const fs::path& base, const std::string& label, const std::string& ext) {
    fs::path p = base;
    std::string stem = p.stem().string();
    if (!label.empty()) stem += "_" + label;
    p.replace_filename(stem + ext);
    return p;
}

void report_warnings(const std::string& label, const dp::RatesResult& r, const dp::ResolvedRun& run) {
    for (auto w : r.warnings) {
        std::cerr << "warning: " << dp::to_string(w);
        if (!label.empty()) std::cerr << " [" << label << "]";
        if (w == dp::RegimeWarning::HamiltonianDominatedViolated)
            std::cerr << " (E_Q = " << r.eq_ueV << " ueV, " << run.config.regime_factor
                      << " * eta * k_B T = " << run.config.regime_factor * run.bath.eta * dp::units::thermal_energy(run.temp.kelvin)
                      << " ueV)";
        std::cerr << '\n';
    }
}

int maybe_dump(const Overrides& o, const dp::RunConfig& c) {
    if (o.dump_config.empty()) return -1;
    if (o.dump_config == "-") std::cout << dp::dump_config(c);
    else write_file(o.dump_config, dp::dump_config(c));
    return kExitOk;
}

// ------------------------------ times ---------------------------------------

int cmd_times(const Overrides& o) {
    const dp::RunConfig cfg = build_config(o);
    if (int rc = maybe_dump(o, cfg); rc >= 0) return rc;
    if (!cfg.sweep.empty()) throw dp::Error(dp::ErrorKind::InvalidConfig, "'times' does not take sweep axes; use 'sweep'");

    std::ostringstream text;
    nlohmann::json all = nlohmann::json::array();
    for (const auto& run : dp::resolve_runs(cfg)) {
        const dp::RatesResult r = dp::compute_times(run.qubit, run.bath, run.temp, {run.config.regime_factor});
        report_warnings(run.label, r, run);
        nlohmann::json j = dp::io::to_json(r);
        j["label"] = run.label;
        j["temp_K"] = run.temp.kelvin;
        all.push_back(j);

        if (!run.label.empty()) text << "[" << run.label << "]\n";
        auto line = [&](const char* key, const std::string& v) { text << std::left << std::setw(20) << key << v << '\n'; };
        line("temp_K", dp::io::format_double(run.temp.kelvin));
        line("T1_ns", dp::io::format_double(r.t1_ns));
        line("Tphi_ns", dp::io::format_double(r.tphi_ns));
        line("T2_ns", dp::io::format_double(r.t2_ns));
        line("EQ_ueV", dp::io::format_double(r.eq_ueV));
        line("dEQ_deps", dp::io::format_double(r.deq_deps));
        line("chi10_sq", dp::io::format_double(r.chi10_sq));
        line("chi11_minus_chi00", dp::io::format_double(r.chi_diag_diff));
        line("S_EQ_rad_per_ns", dp::io::format_double(r.s_eq));
        line("S_zero_rad_per_ns", dp::io::format_double(r.s_zero));
    }
    const std::string body = cfg.format == dp::OutputFormat::Json
                                 ? (all.size() == 1 ? all[0] : all).dump(2) + "\n"
                                 : text.str();
    if (cfg.output_path.empty()) std::cout << body;
    else write_file(cfg.output_path, body);
    return kExitOk;
}

// ------------------------------ sweep ---------------------------------------

std::vector<dp::io::svg::Heatmap> heatmaps_for(const dp::SweepResult& res, const dp::PlotConfig& pc,
                                               const std::string& label) {
    std::vector<dp::io::svg::Heatmap> panels;
    const auto xs = res.axes[0].values(), ys = res.axes[1].values();
    for (const auto& m : pc.metrics) {
        dp::io::svg::Heatmap hm;
        hm.title = m + (label.empty() ? "" : "  [" + label + "]");
        hm.xlabel = dp::axis_label(res.axes[0].name);
        hm.ylabel = dp::axis_label(res.axes[1].name);
        hm.zlabel = dp::metric_label(m);
        hm.x = xs;
        hm.y = ys;
        hm.log_color = pc.ylog;
        for (const auto& row : res.rows)
            hm.z.push_back(row.ok() ? dp::metric_value(*row.result, m) : std::numeric_limits<double>::quiet_NaN());
        panels.push_back(std::move(hm));
    }
    return panels;
}

dp::io::svg::LinePlot lineplot_for(const dp::SweepResult& res, const dp::PlotConfig& pc, const std::string& label) {
    dp::io::svg::LinePlot plot;
    const std::size_t xaxis = res.axes.size() - 1;
    plot.title = label.empty() ? "sweep" : label;
    plot.xlabel = dp::axis_label(res.axes[xaxis].name);
    plot.ylabel = pc.metrics.size() == 1 ? dp::metric_label(pc.metrics[0]) : "value";
    plot.xlog = res.axes[xaxis].scale == dp::AxisScale::Log;
    plot.ylog = pc.ylog;
    const auto xs = res.axes[xaxis].values();
    const std::size_t n_outer = res.axes.size() == 2 ? res.axes[0].count : 1;
    const auto outer = res.axes.size() == 2 ? res.axes[0].values() : std::vector<double>{};
    for (const auto& m : pc.metrics)
        for (std::size_t i = 0; i < n_outer; ++i) {
            dp::io::svg::Series s;
            s.label = m;
            if (res.axes.size() == 2)
                s.label += " " + std::string(dp::to_string(res.axes[0].name)) + "=" + dp::io::format_double(outer[i]);
            s.x = xs;
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const auto& row = res.rows[i * xs.size() + j];
                s.y.push_back(row.ok() ? dp::metric_value(*row.result, m) : std::numeric_limits<double>::quiet_NaN());
            }
            plot.series.push_back(std::move(s));
        }
    return plot;
}

struct FitGroup {
    double kelvin;
    std::vector<dp::SweepResult> results;
};

int cmd_sweep(const Overrides& o) {
    const dp::RunConfig cfg = build_config(o);
    if (int rc = maybe_dump(o, cfg); rc >= 0) return rc;
    const auto runs = dp::resolve_runs(cfg);
    for (const auto& run : runs)
        if (run.config.sweep.empty())
            throw dp::Error(dp::ErrorKind::InvalidConfig, "'sweep' needs 1 or 2 axes (--axis or config 'sweep')");
    const bool to_stdout = cfg.output_path.empty();
    if (cfg.plot && to_stdout) throw dp::Error(dp::ErrorKind::InvalidConfig, "plots need --output");
    std::ostream& report = to_stdout ? std::cerr : std::cout;

    const unsigned threads = thread_count(o);
    const std::string ext = cfg.format == dp::OutputFormat::Json ? ".json" : ".csv";
    const fs::path base = cfg.output_path;
    std::vector<FitGroup> fit_groups;
    std::size_t total_errors = 0;

    for (const auto& run : runs) {
        const dp::SweepResult res = dp::sweep(run.qubit, run.bath, run.temp, run.config.sweep,
                                              {threads, {run.config.regime_factor}});
        std::ostringstream out;
        if (cfg.format == dp::OutputFormat::Json) out << dp::io::to_json(res).dump(2) << '\n';
        else dp::io::write_csv(out, res);
        const std::string label = runs.size() > 1 ? run.label : std::string{};
        if (to_stdout) {
            std::cout << out.str();
        } else {
            const fs::path p = derived_path(base, label, ext);
            write_file(p, out.str());
            report << "wrote " << p.string() << " (" << res.rows.size() << " rows)\n";
        }
        const std::size_t errs = res.error_count();
        total_errors += errs;
        if (errs) std::cerr << "warning: " << errs << " error rows" << (label.empty() ? "" : " in " + label) << '\n';

        if (run.config.ridge) {
            report << "# dephasing ridge" << (label.empty() ? "" : " [" + label + "]") << "\n# eps_ueV,deltaR_ueV,Tphi_ns,chi11_minus_chi00,interior,sweet_spot\n";
            for (const auto& p : dp::find_dephasing_ridge(res))
                report << "# " << dp::io::format_double(p.eps) << ',' << dp::io::format_double(p.deltaR) << ','
                       << dp::io::format_double(p.tphi_ns) << ',' << dp::io::format_double(p.chi_diag_diff) << ','
                       << p.interior << ',' << p.sweet_spot << '\n';
        }

        const auto kind = cfg.plot ? cfg.plot->kind.value_or(res.axes.size() == 2 ? dp::PlotKind::Heatmap : dp::PlotKind::Line)
                                   : dp::PlotKind::Line;
        if (cfg.plot && kind == dp::PlotKind::Heatmap) {
            if (res.axes.size() != 2) throw dp::Error(dp::ErrorKind::InvalidConfig, "heatmaps need two axes");
            const auto panels = heatmaps_for(res, *cfg.plot, run.label);
            write_file(derived_path(base, label, ".svg"), dp::io::svg::render(std::span<const dp::io::svg::Heatmap>(panels)));
        } else if (cfg.plot && kind == dp::PlotKind::Line) {
            write_file(derived_path(base, label, ".svg"), dp::io::svg::render(lineplot_for(res, *cfg.plot, run.label)));
        }

        if (cfg.fit_dephasing) {
            auto it = std::find_if(fit_groups.begin(), fit_groups.end(),
                                   [&](const FitGroup& g) { return g.kelvin == run.temp.kelvin; });
            if (it == fit_groups.end()) {
                fit_groups.push_back({run.temp.kelvin, {}});
                it = std::prev(fit_groups.end());
            }
            it->results.push_back(res);
        }
    }

    if (cfg.fit_dephasing) {
        std::ostringstream fit_csv;
        fit_csv << "temp_K,slope_per_ns,intercept_per_ns,r2,n,pi_S_zero_per_ns\n";
        report << "# dephasing fit: 1/Tphi = slope * (dE_Q/deps)^2 + intercept\n";
        dp::io::svg::LinePlot plot;
        plot.title = "pure dephasing rate vs (dE_Q/deps)^2";
        plot.xlabel = "(dE_Q/deps)^2";
        plot.ylabel = "1/Tphi (1/ns)";
        for (const auto& g : fit_groups) {
            const dp::LineFit f = dp::fit_dephasing_line(std::span<const dp::SweepResult>(g.results));
            const double expected = std::numbers::pi * g.results.front().rows.front().result.value_or(dp::RatesResult{}).s_zero;
            report << "# T=" << dp::io::format_double(g.kelvin) << " K slope=" << dp::io::format_double(f.slope)
                   << " intercept=" << dp::io::format_double(f.intercept) << " r2=" << dp::io::format_double(f.r2)
                   << " n=" << f.n << " pi*S(0)=" << dp::io::format_double(expected) << '\n';
            fit_csv << dp::io::format_double(g.kelvin) << ',' << dp::io::format_double(f.slope) << ','
                    << dp::io::format_double(f.intercept) << ',' << dp::io::format_double(f.r2) << ',' << f.n << ','
                    << dp::io::format_double(expected) << '\n';

            dp::io::svg::Series pts, line;
            pts.label = "T=" + dp::io::format_double(g.kelvin) + " K";
            pts.line = false;
            pts.markers = true;
            double xmax = 0.0;
            for (const auto& r : g.results)
                for (const auto& row : r.rows)
                    if (row.ok() && std::isfinite(row.result->tphi_ns)) {
                        pts.x.push_back(row.result->deq_deps * row.result->deq_deps);
                        pts.y.push_back(1.0 / row.result->tphi_ns);
                        xmax = std::max(xmax, pts.x.back());
                    }
            line.label = "fit T=" + dp::io::format_double(g.kelvin) + " K";
            line.x = {0.0, xmax};
            line.y = {f.intercept, f.slope * xmax + f.intercept};
            plot.series.push_back(std::move(pts));
            plot.series.push_back(std::move(line));
        }
        if (!to_stdout) write_file(derived_path(base, "fit", ".csv"), fit_csv.str());
        if (cfg.plot && cfg.plot->kind == dp::PlotKind::DephasingFit)
            write_file(derived_path(base, "", ".svg"), dp::io::svg::render(plot));
    }
    if (total_errors) std::cerr << "warning: " << total_errors << " error rows in total\n";
    return kExitOk;
}

// ------------------------------ spectrum ------------------------------------

int cmd_spectrum(const Overrides& o, const SpectrumOptions& so) {
    const dp::RunConfig cfg = build_config(o);
    if (int rc = maybe_dump(o, cfg); rc >= 0) return rc;
    if (!(so.grid_min < so.grid_max) || so.grid_points < 2)
        throw dp::Error(dp::ErrorKind::InvalidConfig, "spectrum grid needs grid-min < grid-max and >= 2 points");
    const auto runs = dp::resolve_runs(cfg);
    const auto& run = runs.front();
    if (runs.size() > 1) std::cerr << "warning: spectrum uses only the first run/temperature\n";
    run.bath.validate();

    const auto es = dp::diagonalize(run.qubit);
    const double eq = dp::qubit_energy(es);
    if (eq < dp::degeneracy_tolerance_ueV)
        throw dp::Error(dp::ErrorKind::DegenerateLevels, "E_Q vanishes; the spectrum grid is scaled by E_Q/hbar");
    const double unit = dp::units::energy_to_omega(eq);

    std::vector<double> grid(so.grid_points);
    for (std::size_t i = 0; i < so.grid_points; ++i)
        grid[i] = (so.grid_min + (so.grid_max - so.grid_min) * static_cast<double>(i) / static_cast<double>(so.grid_points - 1)) * unit;

    std::vector<double> oracle_col;
    if (so.oracle_modes > 0) {
        const auto db = dp::oracle::sample_discrete_bath(run.bath, so.oracle_modes, 20.0 * run.bath.omega_c);
        dp::oracle::SpectrumWindow win;
        win.window_time_ns = so.window_ns;
        win.bin_width = so.bin_width;
        win.threads = thread_count(o);
        oracle_col = dp::oracle::spectrum_from_correlator(db, run.temp, grid, win);
    }

    std::ostringstream out;
    out << "omega_rad_per_ns,omega_over_EQ,J,S" << (oracle_col.empty() ? "" : ",S_oracle") << '\n';
    dp::io::svg::Series s_main{"S (continuum)", {}, {}}, s_oracle{"S (discrete-bath oracle)", {}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const double j = dp::spectral_density(run.bath, std::abs(w));
        const double s = std::abs(w) < 1e-15 ? dp::power_spectrum_zero(run.bath, run.temp)
                                             : dp::power_spectrum(run.bath, run.temp, w);
        out << dp::io::format_double(w) << ',' << dp::io::format_double(w / unit) << ',' << dp::io::format_double(j)
            << ',' << dp::io::format_double(s);
        if (!oracle_col.empty()) out << ',' << dp::io::format_double(oracle_col[i]);
        out << '\n';
        s_main.x.push_back(w);
        s_main.y.push_back(s);
        if (!oracle_col.empty()) {
            s_oracle.x.push_back(w);
            s_oracle.y.push_back(oracle_col[i]);
        }
    }
    if (cfg.output_path.empty()) {
        std::cout << out.str();
    } else {
        write_file(cfg.output_path, out.str());
        if (cfg.plot) {
            dp::io::svg::LinePlot plot;
            plot.title = "bath power spectrum";
            plot.xlabel = "omega (rad/ns)";
            plot.ylabel = "S (rad/ns)";
            plot.ylog = false;
            plot.series.push_back(s_main);
            if (!oracle_col.empty()) {
                s_oracle.line = false;
                s_oracle.markers = true;
                plot.series.push_back(s_oracle);
            }
            write_file(derived_path(cfg.output_path, "", ".svg"), dp::io::svg::render(plot));
        }
    }
    return kExitOk;
}

// ------------------------------ validate ------------------------------------

int cmd_validate(const Overrides& o) {
    const dp::RunConfig cfg = build_config(o);
    if (int rc = maybe_dump(o, cfg); rc >= 0) return rc;
    const auto runs = dp::resolve_runs(cfg);
    for (const auto& run : runs) {
        run.bath.validate();
        const auto es = dp::diagonalize(run.qubit);
        const auto warnings = dp::validate_regime(es, run.bath, run.temp, run.config.regime_factor);
        std::cout << (run.label.empty() ? "base" : run.label) << ": E_Q = " << dp::io::format_double(dp::qubit_energy(es))
                  << " ueV, eta k_B T = "
                  << dp::io::format_double(run.bath.eta * dp::units::thermal_energy(run.temp.kelvin)) << " ueV";
        for (auto w : warnings) std::cout << ", warning " << dp::to_string(w);
        std::cout << '\n';
        for (auto w : warnings) std::cerr << "warning: " << dp::to_string(w) << '\n';
    }
    std::cout << "config ok (" << runs.size() << " run" << (runs.size() == 1 ? "" : "s") << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"T1, Tphi and T2 of a three-level hybrid qubit coupled to a phonon bath"};
    app.require_subcommand(1);
    Overrides o;
    SpectrumOptions so;

    auto* times = app.add_subcommand("times", "Evaluate T1, Tphi, T2 at one operating point");
    auto* sweep = app.add_subcommand("sweep", "Evaluate a 1D/2D parameter grid");
    auto* spectrum = app.add_subcommand("spectrum", "Tabulate J(omega) and S(omega)");
    auto* validate = app.add_subcommand("validate", "Validate a config and report regime warnings");
    for (auto* cmd : {times, sweep, spectrum, validate}) add_common_options(*cmd, o);
    spectrum->add_option("--grid-min", so.grid_min, "Lowest omega in units of E_Q/hbar");
    spectrum->add_option("--grid-max", so.grid_max, "Highest omega in units of E_Q/hbar");
    spectrum->add_option("--grid-points", so.grid_points, "Number of grid points");
    spectrum->add_option("--oracle", so.oracle_modes, "Add the discrete-bath spectrum with N modes");
    spectrum->add_option("--window", so.window_ns, "Oracle time window W in ns (Gaussian sigma = W/6)");
    spectrum->add_option("--bin", so.bin_width, "Oracle bin width in rad/ns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*times) return cmd_times(o);
        if (*sweep) return cmd_sweep(o);
        if (*spectrum) return cmd_spectrum(o, so);
        if (*validate) return cmd_validate(o);
    } catch (const dp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitConfig;
}
