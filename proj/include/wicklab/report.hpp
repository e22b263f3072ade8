#pragma once

// Check results, convergence series and their JSON / CSV serialization.
// Rendering is deterministic: fixed key order, 17 significant digits, no
// timestamps or wall times, so identical runs give identical bytes.

#include <string>
#include <vector>

#include "json.hpp"

namespace wicklab {

using ordered_json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

struct CheckResult {
    std::string name;
    ordered_json parameters = ordered_json::object();
    std::size_t bins = 0;
    double delta_omega = 0;
    double defect = 0;
    double tolerance = 0;
    bool pass = false;
    double wall_seconds = 0;  // kept in memory only
};

struct ConvergencePoint {
    std::size_t bins = 0;
    double delta_omega = 0;
    double defect = 0;
};

struct SlopeFit {
    double slope = 0;
    double residual = 0;  // max |log y - fit| over the points
};

// Least squares of log y against log x. Throws DegenerateInput for fewer than
// two points, non-positive values, or a single distinct x.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceSeries {
    std::string name;
    ordered_json parameters = ordered_json::object();
    std::vector<ConvergencePoint> points;
    double slope_min = 0;
    double slope_max = 0;
    // Filled by finalize(); slope and residual are NaN when the fit is degenerate.
    double slope = 0;
    double residual = 0;
    bool pass = false;

    void finalize();
};

struct Report {
    ordered_json config = ordered_json::object();
    std::vector<CheckResult> checks;
    std::vector<ConvergenceSeries> convergence;

    bool all_pass() const;
};

enum class ReportFormat { Json, Csv };

std::string render_json(const Report& report);
std::string render_csv(const Report& report);
std::string render(const Report& report, ReportFormat format);

// "-" writes to stdout. Throws IoError when the file cannot be written.
void emit_report(const Report& report, ReportFormat format, const std::string& path);

// %.17g, with null for non-finite values.
std::string format_number(double value);

} // namespace wicklab
