#include "wicklab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "wicklab/error.hpp"

namespace wicklab {

std::string format_number(double value)
{
    if (!std::isfinite(value))
        return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorKind::DegenerateInput, "slope fit needs at least two (x, y) pairs");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0) || !(y[i] > 0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw Error(ErrorKind::DegenerateInput, "slope fit needs positive finite values");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0)
        throw Error(ErrorKind::DegenerateInput, "slope fit needs two distinct x values");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    const double intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i)
        fit.residual = std::max(fit.residual, std::abs(ly[i] - (intercept + fit.slope * lx[i])));
    return fit;
}

void ConvergenceSeries::finalize()
{
    std::vector<double> x, y;
    for (const auto& p : points) {
        x.push_back(p.delta_omega);
        y.push_back(p.defect);
    }
    try {
        const SlopeFit fit = fit_slope(x, y);
        slope = fit.slope;
        residual = fit.residual;
        pass = slope >= slope_min && slope <= slope_max;
    } catch (const Error&) {
        slope = residual = std::numeric_limits<double>::quiet_NaN();
        pass = false;
    }
}

bool Report::all_pass() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    for (const auto& s : convergence)
        if (!s.pass)
            return false;
    return true;
}

namespace {

void write_string(std::string& out, const std::string& s) { out += ordered_json(s).dump(); }

void write_value(std::string& out, const ordered_json& v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
    case ordered_json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad;
            write_string(out, it.key());
            out += ": ";
            write_value(out, it.value(), indent + 2);
        }
        out += "\n" + close + "}";
        return;
    }
    case ordered_json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ",\n";
            out += pad;
            write_value(out, v[i], indent + 2);
        }
        out += "\n" + close + "]";
        return;
    }
    case ordered_json::value_t::number_float:
        out += format_number(v.get<double>());
        return;
    default:
        out += v.dump();
    }
}

ordered_json finite_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json to_json(const CheckResult& c)
{
    ordered_json j;
    j["name"] = c.name;
    j["parameters"] = c.parameters;
    j["N"] = c.bins;
    j["delta_omega"] = finite_or_null(c.delta_omega);
    j["defect"] = finite_or_null(c.defect);
    j["tolerance"] = finite_or_null(c.tolerance);
    j["pass"] = c.pass;
    return j;
}

ordered_json to_json(const ConvergenceSeries& s)
{
    ordered_json j;
    j["name"] = s.name;
    j["parameters"] = s.parameters;
    ordered_json pts = ordered_json::array();
    for (const auto& p : s.points) {
        ordered_json q;
        q["N"] = p.bins;
        q["delta_omega"] = finite_or_null(p.delta_omega);
        q["defect"] = finite_or_null(p.defect);
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    j["slope"] = finite_or_null(s.slope);
    j["residual"] = finite_or_null(s.residual);
    j["slope_min"] = s.slope_min;
    j["slope_max"] = s.slope_max;
    j["pass"] = s.pass;
    return j;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::string csv_number(double x) { return std::isfinite(x) ? format_number(x) : ""; }

} // namespace

std::string render_json(const Report& report)
{
    ordered_json root;
    root["schema_version"] = report_schema_version;
    root["config"] = report.config;
    root["checks"] = ordered_json::array();
    for (const auto& c : report.checks)
        root["checks"].push_back(to_json(c));
    root["convergence"] = ordered_json::array();
    for (const auto& s : report.convergence)
        root["convergence"].push_back(to_json(s));
    std::string out;
    write_value(out, root, 0);
    out += "\n";
    return out;
}

std::string render_csv(const Report& report)
{
    std::string out = "check,N,delta_omega,defect,tolerance,pass\n";
    for (const auto& c : report.checks)
        out += csv_field(c.name) + "," + std::to_string(c.bins) + "," + csv_number(c.delta_omega) + "," +
               csv_number(c.defect) + "," + csv_number(c.tolerance) + "," + (c.pass ? "true" : "false") + "\n";
    // Convergence points carry no absolute tolerance; pass is the slope verdict.
    for (const auto& s : report.convergence)
        for (const auto& p : s.points)
            out += csv_field(s.name) + "," + std::to_string(p.bins) + "," + csv_number(p.delta_omega) + "," +
                   csv_number(p.defect) + ",," + (s.pass ? "true" : "false") + "\n";
    return out;
}

std::string render(const Report& report, ReportFormat format)
{
    return format == ReportFormat::Json ? render_json(report) : render_csv(report);
}

void emit_report(const Report& report, ReportFormat format, const std::string& path)
{
    const std::string text = render(report, format);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
    f << text;
    f.flush();
    if (!f)
        throw Error(ErrorKind::IoError, "write to " + path + " failed");
}

} // namespace wicklab
