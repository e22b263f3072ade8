#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wicklab/error.hpp"
#include "wicklab/suite.hpp"

namespace {

enum Exit { Success = 0, CheckFailure = 1, ConfigError = 2, InternalError = 3 };

struct Flags {
    std::string config_file;
    std::vector<std::size_t> bins;
    std::optional<double> omega_max;
    std::vector<std::size_t> internal_dims;
    std::optional<std::size_t> truncation;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::vector<std::string> checks;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_flags(CLI::App& sub, Flags& f)
{
    sub.add_option("--config", f.config_file, "JSON file with the same keys as the flags")->check(CLI::ExistingFile);
    sub.add_option("--bins", f.bins, "bin count, or a comma-separated sweep")->delimiter(',');
    sub.add_option("--omega-max", f.omega_max, "upper frequency cutoff");
    sub.add_option("--internal-dims", f.internal_dims, "internal dimension, uniform or one per bin")->delimiter(',');
    sub.add_option("--truncation", f.truncation, "particle-number truncation M");
    sub.add_option("--seed", f.seed, "seed of the suite generator");
    sub.add_option("--tolerance", f.tolerance, "tolerance of the exact checks");
    sub.add_option("--checks", f.checks, "comma-separated subset of checks")->delimiter(',');
    sub.add_option("--out", f.out, "report path, - for stdout");
    sub.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

wicklab::SuiteConfig build_config(const Flags& f)
{
    wicklab::SuiteConfig c = f.config_file.empty() ? wicklab::SuiteConfig{} : wicklab::load_config_file(f.config_file);
    if (!f.bins.empty())
        c.bins = f.bins;
    if (f.omega_max)
        c.omega_max = *f.omega_max;
    if (!f.internal_dims.empty())
        c.internal_dims = f.internal_dims;
    if (f.truncation)
        c.truncation = *f.truncation;
    if (f.seed)
        c.seed = *f.seed;
    if (f.tolerance)
        c.tolerance = *f.tolerance;
    if (!f.checks.empty())
        c.checks = f.checks;
    if (f.out)
        c.out = *f.out;
    if (f.format)
        c.format = *f.format == "csv" ? wicklab::ReportFormat::Csv : wicklab::ReportFormat::Json;
    return c;
}

void summarize(const wicklab::Report& r)
{
    for (const auto& c : r.checks)
        if (!c.pass)
            std::cerr << "FAIL " << c.name << " N=" << c.bins << " defect=" << wicklab::format_number(c.defect)
                      << " tolerance=" << wicklab::format_number(c.tolerance) << "\n";
    for (const auto& s : r.convergence)
        if (!s.pass)
            std::cerr << "FAIL " << s.name << " slope=" << wicklab::format_number(s.slope) << " outside ["
                      << s.slope_min << ", " << s.slope_max << "]\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical checks for spectral Wick calculus on truncated Fock spaces"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<CLI::App*, wicklab::Command>> subs;
    for (auto [name, help] : {std::pair{"verify", "run the exact-identity checks"},
                              std::pair{"converge", "fit convergence orders of the discretization defects"},
                              std::pair{"ito-table", "probe every Ito table entry"},
                              std::pair{"xi", "checks of the boson-fermion map"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_flags(*sub, flags);
        subs.emplace_back(sub, wicklab::parse_command(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Success : ConfigError;
    }

    try {
        wicklab::Command command = wicklab::Command::Verify;
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed())
                command = cmd;
        const wicklab::SuiteConfig config = build_config(flags);
        const wicklab::Report report = wicklab::run_suite(command, config);
        wicklab::emit_report(report, config.format, config.out);
        summarize(report);
        return report.all_pass() ? Success : CheckFailure;
    } catch (const wicklab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case wicklab::ErrorKind::ConfigInvalid:
        case wicklab::ErrorKind::SizeOverflow:
        case wicklab::ErrorKind::IoError:
            return ConfigError;
        default:
            return InternalError;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return InternalError;
    }
}
