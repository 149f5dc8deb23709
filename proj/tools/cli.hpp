#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalidModel = 2;
inline constexpr int kExitBudget = 3;

/// Environment variable holding the default time budget in seconds.
inline constexpr const char* kBudgetVariable = "MODP_BUDGET_SECONDS";

/**
 * Runs one `modp` command line (without the program name) and returns its exit
 * code: 0 on success, 1 on usage or I/O errors, 2 for invalid or cyclic models
 * where the command needs a valid or acyclic one, 3 when a solve ran out of
 * budget.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modp::cli
