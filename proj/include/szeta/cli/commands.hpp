#pragma once

// Subcommands. Each writes CSV to `out`, diagnostics to `log`, and returns
// the process exit code: 0 success, 1 property violation. Configuration and
// input problems are thrown and mapped to 2 by run_command.

#include <ostream>
#include <string>
#include <vector>

#include "szeta/cli/config.hpp"
#include "szeta/critical_line.hpp"

namespace szeta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

int cmd_verify_extremal(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_explicit_formula(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_lowest_zero(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_find_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_ingest_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& log);

const std::vector<std::string>& command_names();

/// Dispatches by name; library errors become kExitInput with the message on `log`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Zeros from `zeros` (a published table), else the cache directory. With
/// `compute = true` missing zeros are computed and cached; otherwise a
/// ConfigError names the commands that produce them.
ZeroSet zeros_for(const RunConfig& cfg, const LFunctionDescriptor& d, double height);

std::string csv_number(double v);

}  // namespace szeta::cli
