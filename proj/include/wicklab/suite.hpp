#pragma once

// Suite configuration and orchestration for the verify, converge, ito-table
// and xi commands. Every check draws from its own generator seeded from the
// suite seed and the check name, so results do not depend on check order.

#include <cstdint>
#include <string>
#include <vector>

#include "wicklab/report.hpp"

namespace wicklab {

enum class Command { Verify, Converge, ItoTable, Xi };

Command parse_command(const std::string& name);
std::string to_string(Command command);

struct SuiteConfig {
    double omega_max = 1.0;
    std::vector<std::size_t> bins;           // empty: command default
    std::vector<std::size_t> internal_dims;  // one value: uniform; otherwise one per bin
    std::size_t truncation = 3;
    std::uint64_t seed = 42;
    double tolerance = 1e-10;
    std::vector<std::string> checks;         // empty: every check of the command
    std::string out = "-";
    ReportFormat format = ReportFormat::Json;
};

inline constexpr std::uint64_t suite_dimension_cap = 200000;

// Keys: bins, omega-max, internal-dims, truncation, seed, tolerance, checks,
// out, format. Unknown keys and wrong types throw ConfigInvalid.
void apply_config_json(SuiteConfig& config, const nlohmann::json& json);
SuiteConfig load_config_file(const std::string& path);

// Fills defaults for the command and validates. Throws ConfigInvalid, or
// SizeOverflow when a Fock space would exceed the dimension cap.
SuiteConfig resolve_config(Command command, SuiteConfig config);

std::vector<std::string> available_checks(Command command);

// Resolves the config first.
Report run_suite(Command command, const SuiteConfig& config);
Report run_verify(const SuiteConfig& config);
Report run_converge(const SuiteConfig& config);
Report run_ito_table(const SuiteConfig& config);
Report run_xi(const SuiteConfig& config);

} // namespace wicklab
