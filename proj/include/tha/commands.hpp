#ifndef THA_COMMANDS_HPP
#define THA_COMMANDS_HPP

#include <ostream>
#include <string>

#include "tha/config.hpp"

namespace tha {

/// Exit codes: 0 success, 2 validation error, 3 numerical failure.
enum ExitCode : int { kOk = 0, kValidationError = 2, kNumericalError = 3 };

/// Runs one of: fidelity, keyrate, optimize-thermal, separable, shutter,
/// fig3, fig4, fig5, selfcheck. Writes the CSV dataset to `out`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

/// CSV-safe number formatting: 12 significant digits, '.' separator.
std::string csv_number(double v);

}  // namespace tha

#endif
