#include <algorithm>
#include <cstdlib>

#include "CLI11.hpp"
#include "degenlag/cli/commands.hpp"

namespace degenlag::cli {

namespace {

unsigned long long seed_from_env() {
  const char* raw = std::getenv("DEGENLAG_SEED");
  if (raw == nullptr || *raw == '\0') return SelftestOptions{}.seed;
  try {
    std::size_t used = 0;
    const unsigned long long seed = std::stoull(raw, &used);
    if (raw[used] != '\0') throw std::invalid_argument(raw);
    return seed;
  } catch (const std::exception&) {
    throw ConfigError(std::string("DEGENLAG_SEED must be a non-negative integer, got '") + raw + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational integrators for degenerate Lagrangians and their modified equations", "degenlag"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_prefix;
  std::vector<double> h_list;
  SelftestOptions selftest;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment configuration")->required();
    sub->add_option("--output", output_prefix, "Output file prefix (overrides output_prefix)");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Discrete, exact and modified trajectories as CSV");
  add_common(simulate);
  CLI::App* parasites = app.add_subcommand("parasites", "Smooth/parasitic decomposition and growth indicator");
  add_common(parasites);
  CLI::App* defect = app.add_subcommand("defect-order", "Defect of the truncated modified equation over h");
  add_common(defect);
  defect->add_option("--h-list", h_list, "Comma-separated step sizes")->delimiter(',');
  CLI::App* self = app.add_subcommand("selftest", "Run the built-in oracle equivalence suites");
  self->add_option("--only", selftest.only, "Run a single suite");
  self->add_option("--mutate", selftest.mutate)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (self->parsed()) {
      selftest.seed = seed_from_env();
      return cmd_selftest(selftest, out);
    }
    ExperimentConfig config = load_config(config_path);
    if (!output_prefix.empty()) config.output_prefix = output_prefix;
    if (!h_list.empty()) config.h_list = h_list;
    validate(config);
    if (simulate->parsed()) return cmd_simulate(config, out);
    if (parasites->parsed()) return cmd_parasites(config, out);
    return cmd_defect_order(config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const degenlag::Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace degenlag::cli
