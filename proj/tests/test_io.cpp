#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <sstream>

#include "dotphonon/io/csv.hpp"
#include "dotphonon/io/json.hpp"
#include "dotphonon/io/svg.hpp"
#include "dotphonon/presets.hpp"

using namespace dotphonon;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

RatesResult rates(double t1, double tphi, double t2) {
    RatesResult r;
    r.t1_ns = t1;
    r.tphi_ns = tphi;
    r.t2_ns = t2;
    r.eq_ueV = 55.25;
    r.deq_deps = -0.5;
    r.chi10_sq = 0.125;
    r.chi_diag_diff = -1.0;
    return r;
}

SweepResult fixture() {
    SweepResult res;
    res.axes = {{AxisName::Eps, 25.0, 400.0, 3}, {AxisName::DeltaR, 20.0, 300.0, 1}};
    SweepRow a;
    a.values = {25.0, 20.0};
    a.result = rates(100.0, 200.0, 100.0);
    SweepRow b;
    b.values = {212.5, 20.0};
    b.result = rates(inf, inf, inf);
    b.result->warnings = {RegimeWarning::HamiltonianDominatedViolated};
    SweepRow c;
    c.values = {400.0, 20.0};
    c.error = ErrorKind::DegenerateLevels;
    c.message = "degenerate";
    res.rows = {a, b, c};
    return res;
}

// Golden output; any change here is a schema change.
constexpr const char* kGolden =
    "axis1_name,axis1_value,axis2_name,axis2_value,T1_ns,Tphi_ns,T2_ns,EQ_ueV,dEQ_deps,chi10_sq,chi11_minus_chi00,status\n"
    "eps,25,deltaR,20,100,200,100,55.25,-0.5,0.125,-1,ok\n"
    "eps,212.5,deltaR,20,inf,inf,inf,55.25,-0.5,0.125,-1,warn:HamiltonianDominatedViolated\n"
    "eps,400,deltaR,20,,,,,,,,error:DegenerateLevels\n";

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("csv header is stable", "[io][csv]") {
    CHECK(io::csv_header ==
          "axis1_name,axis1_value,axis2_name,axis2_value,T1_ns,Tphi_ns,T2_ns,EQ_ueV,dEQ_deps,chi10_sq,"
          "chi11_minus_chi00,status");
}

TEST_CASE("csv golden three-row fixture", "[io][csv]") {
    std::ostringstream os;
    io::write_csv(os, fixture());
    CHECK(os.str() == kGolden);
}

TEST_CASE("csv one-axis rows leave the second axis empty", "[io][csv]") {
    SweepResult res = fixture();
    res.axes.pop_back();
    std::ostringstream os;
    io::write_csv_row(os, res, res.rows[0]);
    CHECK(os.str() == "eps,25,,,100,200,100,55.25,-0.5,0.125,-1,ok\n");
}

TEST_CASE("number formatting", "[io][csv]") {
    CHECK(io::format_double(inf) == "inf");
    CHECK(io::format_double(-inf) == "-inf");
    CHECK(io::format_double(std::nan("")) == "nan");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(148.42323053538158) == "148.42323053538158");
    CHECK(io::format_double(1e-300) == "1e-300");
    // Shortest form round-trips exactly.
    const double v = 0.1 + 0.2;
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("json output", "[io][json]") {
    const auto j = io::to_json(rates(inf, 10.0, 10.0));
    CHECK(j["T1_ns"] == "inf");
    CHECK(j["Tphi_ns"] == 10.0);
    CHECK(j["warnings"].is_array());

    const auto s = io::to_json(fixture());
    REQUIRE(s["rows"].size() == 3);
    CHECK(s["axes"][1]["name"] == "deltaR");
    CHECK(s["rows"][2]["status"] == "error:DegenerateLevels");
    CHECK(s["rows"][2]["message"] == "degenerate");
    CHECK(s["rows"][0]["values"].size() == 2);
}

TEST_CASE("line plot svg is well formed", "[io][svg]") {
    io::svg::LinePlot plot;
    plot.title = "T1 & T2 <vs> T";
    plot.xlabel = "T (K)";
    plot.ylabel = "time (ns)";
    plot.xlog = plot.ylog = true;
    plot.series.push_back({"T1", {0.05, 0.5, 2.0}, {300.0, 100.0, 40.0}});
    plot.series.push_back({"T2", {0.05, 0.5, 2.0}, {500.0, inf, 70.0}});
    const std::string svg = io::svg::render(plot);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("T1 &amp; T2 &lt;vs&gt; T") != std::string::npos);
    CHECK(svg.find("<vs>") == std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find(">T1<") != std::string::npos);  // legend entries
    CHECK(svg.find(">T2<") != std::string::npos);
    CHECK(count(svg, "<svg") == count(svg, "</svg>"));
    CHECK(count(svg, "<g") == count(svg, "</g>"));
}

TEST_CASE("heatmap svg draws one cell per grid point", "[io][svg]") {
    io::svg::Heatmap hm;
    hm.title = "Tphi";
    hm.xlabel = "eps";
    hm.ylabel = "deltaR";
    hm.zlabel = "ns";
    hm.x = {1.0, 2.0, 3.0};
    hm.y = {10.0, 20.0};
    hm.z = {1.0, 10.0, 100.0, inf, std::nan(""), 5.0};
    const std::string one = io::svg::render(hm);
    CHECK(one.rfind("<svg", 0) == 0);
    CHECK(one.find("</svg>") != std::string::npos);
    CHECK(one.find("nan") == std::string::npos);
    CHECK(count(one, "class=\"cell\"") == 6);

    const std::vector<io::svg::Heatmap> panels{hm, hm, hm};
    CHECK(count(io::svg::render(panels), "class=\"cell\"") == 18);
}
