#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "degenlag/integrators.hpp"
#include "degenlag/modified.hpp"
#include "degenlag/system.hpp"

namespace degenlag::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { Toy, Vortex, Quadratic };

/// One scalar term of the separable toy Hamiltonian: either the pendulum's
/// own term (-cos q for V, p^2/2 for U) or a polynomial c0 + c1 x + ...
struct TermSelector {
  bool pendulum = true;
  std::vector<double> coefficients;

  bool operator==(const TermSelector&) const = default;
};

struct ExperimentConfig {
  SystemKind system = SystemKind::Toy;
  TermSelector toy_v;
  TermSelector toy_u;
  std::vector<double> vortex_gamma;
  std::vector<std::array<double, 2>> vortex_positions;
  std::vector<std::vector<double>> quadratic_a;
  std::vector<std::vector<double>> quadratic_s;
  std::vector<double> initial_state{3.0, 0.0};

  MethodId method = MethodId::Midpoint;
  double h = 0.35;
  std::size_t steps = 200;

  StarterSpec::Mode starter = StarterSpec::Mode::ReferenceFlow;
  double starter_epsilon = 0.0;
  std::optional<std::vector<double>> starter_direction;  // nullopt: alternating-unit

  TruncationOrder truncation = TruncationOrder::Two;
  int reference_dt_divisor = 100;

  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  JacobianMode newton_jacobian = JacobianMode::Analytic;

  std::string output_prefix = "degenlag";

  // defect-order
  std::vector<double> h_list;
  double t_end = 2.0;

  // parasites: also run with epsilon = 0 and report the difference
  bool subtract_baseline = false;
  std::size_t parasite_window = 20;

  bool operator==(const ExperimentConfig&) const = default;

  [[nodiscard]] StarterSpec starter_spec() const;
  [[nodiscard]] NewtonConfig newton() const;
  [[nodiscard]] Vector initial_vector() const;
  [[nodiscard]] std::unique_ptr<DegenerateSystem> make_system() const;
};

[[nodiscard]] std::vector<std::string_view> preset_names();

/// Defaults overridden by the named preset. Throws ConfigError on unknown names.
[[nodiscard]] ExperimentConfig preset(std::string_view name);

/// Parses a flat JSON object. A "preset" key, if present, is applied first and
/// the remaining keys override it. Unknown keys are rejected.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& doc);
[[nodiscard]] ExperimentConfig parse_config_text(std::string_view text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Full expansion of every field (never emits "preset").
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);

/// Throws ConfigError if an invariant is violated.
void validate(const ExperimentConfig& config);

}  // namespace degenlag::cli
