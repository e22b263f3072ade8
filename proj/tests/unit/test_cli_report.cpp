#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wicklab/error.hpp"
#include "wicklab/suite.hpp"

using namespace wicklab;

namespace {

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::IoError;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("fit_slope: power laws, constants, degenerate input")
{
    const auto sq = fit_slope({1, 2, 4}, {1, 4, 16});
    CHECK(std::abs(sq.slope - 2.0) <= 1e-12);
    CHECK(sq.residual <= 1e-12);
    CHECK(std::abs(fit_slope({1, 2, 4}, {3, 3, 3}).slope) <= 1e-15);
    const auto noisy = fit_slope({1, 2, 4}, {1, 2.2, 4});
    CHECK(noisy.residual > 0.01);
    CHECK(kind_of([] { fit_slope({1, 2}, {1, 0}); }) == ErrorKind::DegenerateInput);
    CHECK(kind_of([] { fit_slope({1}, {1}); }) == ErrorKind::DegenerateInput);
    CHECK(kind_of([] { fit_slope({2, 2}, {1, 3}); }) == ErrorKind::DegenerateInput);
}

TEST_CASE("convergence series verdicts")
{
    ConvergenceSeries s;
    s.slope_min = 0.8;
    s.slope_max = 1.2;
    s.points = {{4, 0.25, 0.5}, {8, 0.125, 0.25}, {16, 0.0625, 0.125}};
    s.finalize();
    CHECK(s.pass);
    CHECK(std::abs(s.slope - 1.0) <= 1e-12);
    s.points[2].defect = 0.0;
    s.finalize();
    CHECK(!s.pass);
    CHECK(std::isnan(s.slope));
}

TEST_CASE("empty report renders valid empty arrays")
{
    Report r;
    const std::string j = render_json(r);
    const auto parsed = nlohmann::json::parse(j);
    CHECK(parsed["schema_version"] == report_schema_version);
    CHECK(parsed["checks"].empty());
    CHECK(parsed["convergence"].empty());
    CHECK(j.find("\"schema_version\"") < j.find("\"config\""));
    CHECK(j.find("\"config\"") < j.find("\"checks\""));
    CHECK(j.find("\"checks\"") < j.find("\"convergence\""));
    CHECK(render_csv(r) == "check,N,delta_omega,defect,tolerance,pass\n");
}

TEST_CASE("one check gives one CSV row with 17-digit numbers")
{
    Report r;
    CheckResult c;
    c.name = "ccr";
    c.bins = 8;
    c.delta_omega = 0.1;
    c.defect = 1.0 / 3.0;
    c.tolerance = 1e-10;
    c.pass = false;
    r.checks.push_back(c);
    const std::string csv = render_csv(r);
    CHECK(count_lines(csv) == 2);
    CHECK(csv.find("ccr,8,0.10000000000000001,0.33333333333333331,1e-10,false\n") != std::string::npos);
    CHECK(format_number(std::nan("")) == "null");
    const auto parsed = nlohmann::json::parse(render_json(r));
    CHECK(parsed["checks"][0]["defect"].get<double>() == 1.0 / 3.0);
    CHECK(!r.all_pass());
}

TEST_CASE("emit_report writes files and reports IO errors")
{
    Report r;
    const std::string path = "wicklab_report_test.csv";
    emit_report(r, ReportFormat::Csv, path);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == render_csv(r));
    std::remove(path.c_str());
    CHECK(kind_of([&] { emit_report(r, ReportFormat::Json, "/nonexistent-dir/x.json"); }) == ErrorKind::IoError);
}

TEST_CASE("config resolution and validation")
{
    const SuiteConfig v = resolve_config(Command::Verify, {});
    CHECK(v.bins == std::vector<std::size_t>{8});
    CHECK(v.internal_dims == std::vector<std::size_t>{1});
    CHECK(v.checks == available_checks(Command::Verify));
    CHECK(resolve_config(Command::Converge, {}).bins == std::vector<std::size_t>{4, 8, 16, 32});

    auto with = [](auto&& edit) {
        SuiteConfig c;
        edit(c);
        return c;
    };
    CHECK(kind_of([&] { resolve_config(Command::Verify, with([](SuiteConfig& c) { c.bins = {0}; })); }) ==
          ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { resolve_config(Command::Converge, with([](SuiteConfig& c) { c.bins = {4, 8}; })); }) ==
          ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { resolve_config(Command::Verify, with([](SuiteConfig& c) { c.bins = {8, 4}; })); }) ==
          ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { resolve_config(Command::Verify, with([](SuiteConfig& c) { c.omega_max = -1; })); }) ==
          ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { resolve_config(Command::Verify, with([](SuiteConfig& c) { c.checks = {"nope"}; })); }) ==
          ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] {
              resolve_config(Command::Verify, with([](SuiteConfig& c) { c.internal_dims = {1, 2}; }));
          }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] {
              resolve_config(Command::Verify, with([](SuiteConfig& c) {
                                 c.bins = {64};
                                 c.truncation = 5;
                             }));
          }) == ErrorKind::SizeOverflow);
    const auto listed = resolve_config(Command::Verify, with([](SuiteConfig& c) {
                                           c.bins = {3};
                                           c.internal_dims = {1, 2, 1};
                                       }));
    CHECK(listed.internal_dims.size() == 3);
}

TEST_CASE("config JSON keys")
{
    SuiteConfig c;
    apply_config_json(c, nlohmann::json::parse(R"({"bins": [4, 8, 16], "omega-max": 2.0, "internal-dims": 2,
        "truncation": 2, "seed": 5, "tolerance": 1e-9, "checks": ["ccr"], "out": "r.csv", "format": "csv"})"));
    CHECK(c.bins == std::vector<std::size_t>{4, 8, 16});
    CHECK(c.omega_max == 2.0);
    CHECK(c.internal_dims == std::vector<std::size_t>{2});
    CHECK(c.truncation == 2);
    CHECK(c.seed == 5);
    CHECK(c.tolerance == 1e-9);
    CHECK(c.checks == std::vector<std::string>{"ccr"});
    CHECK(c.out == "r.csv");
    CHECK(c.format == ReportFormat::Csv);
    CHECK(kind_of([&] { apply_config_json(c, nlohmann::json::parse(R"({"extra": 1})")); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { apply_config_json(c, nlohmann::json::parse(R"({"seed": -3})")); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([&] { apply_config_json(c, nlohmann::json::parse(R"({"format": "xml"})")); }) ==
          ErrorKind::ConfigInvalid);
}

TEST_CASE("suite runs are deterministic and honor the tolerance")
{
    SuiteConfig c;
    c.bins = {5};
    c.checks = {"ccr", "estimate", "wick-route", "xi-isometry"};
    const Report a = run_verify(c);
    const Report b = run_verify(c);
    CHECK(render_json(a) == render_json(b));
    CHECK(a.all_pass());
    CHECK(a.checks.size() == 4);
    CHECK(a.checks[0].name == "ccr");

    c.tolerance = 0;
    const Report strict = run_verify(c);
    CHECK(!strict.all_pass());

    c.seed = 43;
    c.tolerance = 1e-10;
    CHECK(render_json(run_verify(c)) != render_json(a));
}

TEST_CASE("every check result is reproducible from its module call")
{
    SuiteConfig c;
    c.bins = {6};
    c.checks = {"car-closed-form"};
    const Report r = run_verify(c);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].parameters["closed_form"].get<double>() == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("convergence suite reproduces the expected orders")
{
    SuiteConfig c;
    c.bins = {4, 8, 16};
    c.checks = {"car-uniform", "ordered-overlap-fermi", "xi-leakage"};
    const Report r = run_converge(c);
    REQUIRE(r.convergence.size() == 3);
    CHECK(std::abs(r.convergence[0].slope - 1.0) <= 1e-12);
    CHECK(std::abs(r.convergence[1].slope - 0.5) <= 1e-12);
    CHECK(r.convergence[2].pass);
}
