#pragma once

#include <iosfwd>
#include <string>

#include "fchain/config.hpp"

namespace fchain {

inline constexpr const char* kEngineVersion = "1.0.0";

// Exit codes shared by the library runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;
inline constexpr int kExitValidationMismatch = 4;

// Executes the sweep described by a config file and writes the CSV. All rows
// are computed before anything is written, so a numerical failure leaves no
// partial output behind. Returns an exit code; diagnostics go to log.
int run_from_config(const std::string& config_path, int workers_override, std::ostream& log);

// Cross-checks the engine against dense diagonalization over the built-in
// catalog of small chains (sizes up to max_sites) and prints one line per
// entry. Returns kExitOk or kExitValidationMismatch.
int run_validation(int max_sites, std::ostream& out, std::ostream& log);

// Renders a sweep as CSV text (header plus one line per row).
std::string render_csv(const SweepResult& sweep, int precision, double holo_c);

}  // namespace fchain
