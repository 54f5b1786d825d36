#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "degenlag/cli/config.hpp"

namespace degenlag::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

/// Writes rows as CSV: 17 significant digits, '\n' line endings. A non-empty
/// `footer` is written verbatim as the last row.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, const std::vector<std::string>& footer = {});

/// "%.17g"
[[nodiscard]] std::string format_double(double value);

/// Rows (t, q_1..q_N) of a trajectory.
[[nodiscard]] std::vector<std::vector<double>> trajectory_rows(const Trajectory& traj);
[[nodiscard]] std::vector<std::string> state_header(std::size_t dim);

// Each command returns an ExitCode; degenlag::Error propagates to the caller.
int cmd_simulate(const ExperimentConfig& config, std::ostream& out);
int cmd_parasites(const ExperimentConfig& config, std::ostream& out);
int cmd_defect_order(const ExperimentConfig& config, std::ostream& out);

struct SelftestOptions {
  std::string only;        ///< empty: every suite
  std::string mutate;      ///< "f2-sign" flips the h^2 term of the generic field
  unsigned long long seed = 20240607ULL;
};

[[nodiscard]] std::vector<std::string_view> selftest_suites();
int cmd_selftest(const SelftestOptions& options, std::ostream& out);

/// Full command line, argv[0] excluded. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degenlag::cli
