#include "degenlag/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "degenlag/systems.hpp"

namespace degenlag::cli {

using nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "preset",          "system",           "toy_v",           "toy_u",
    "vortex_gamma",    "vortex_positions", "quadratic_a",     "quadratic_s",
    "initial_state",   "method",           "h",               "steps",
    "starter",         "starter_epsilon",  "starter_direction", "truncation",
    "reference_dt_divisor", "newton_tol",  "newton_max_iter", "newton_jacobian",
    "output_prefix",   "h_list",           "t_end",           "subtract_baseline",
    "parasite_window",
};

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Toy: return "toy";
    case SystemKind::Vortex: return "vortex";
    case SystemKind::Quadratic: return "quadratic";
  }
  return "toy";
}

std::string_view to_string(JacobianMode mode) {
  return mode == JacobianMode::Analytic ? "analytic" : "finite-difference";
}

template <class T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

TermSelector parse_term(const json& value, const char* key) {
  if (value.is_string()) {
    if (value.get<std::string>() != "pendulum") {
      throw ConfigError(std::string("key '") + key + "': expected \"pendulum\" or an array of coefficients");
    }
    return {};
  }
  if (!value.is_array() || value.empty()) {
    throw ConfigError(std::string("key '") + key + "': expected \"pendulum\" or a non-empty coefficient array");
  }
  TermSelector t;
  t.pendulum = false;
  t.coefficients = value.get<std::vector<double>>();
  return t;
}

json term_to_json(const TermSelector& t) {
  if (t.pendulum) return "pendulum";
  return t.coefficients;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows, const char* key) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ConfigError(std::string("key '") + key + "': matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  return m;
}

bool finite_all(const std::vector<double>& v) {
  for (const double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

StarterSpec ExperimentConfig::starter_spec() const {
  StarterSpec spec;
  spec.mode = starter;
  spec.epsilon = starter_epsilon;
  if (starter_direction) {
    spec.direction = Eigen::Map<const Vector>(starter_direction->data(), static_cast<Eigen::Index>(starter_direction->size()));
  }
  return spec;
}

NewtonConfig ExperimentConfig::newton() const { return {newton_tol, newton_max_iter, newton_jacobian}; }

Vector ExperimentConfig::initial_vector() const {
  if (system == SystemKind::Vortex) {
    Vector z(static_cast<Eigen::Index>(2 * vortex_positions.size()));
    for (std::size_t k = 0; k < vortex_positions.size(); ++k) {
      z(static_cast<Eigen::Index>(2 * k)) = vortex_positions[k][0];
      z(static_cast<Eigen::Index>(2 * k + 1)) = vortex_positions[k][1];
    }
    return z;
  }
  return Eigen::Map<const Vector>(initial_state.data(), static_cast<Eigen::Index>(initial_state.size()));
}

std::unique_ptr<DegenerateSystem> ExperimentConfig::make_system() const {
  switch (system) {
    case SystemKind::Toy: {
      ScalarTerm u = toy_u.pendulum ? ScalarTerm::half_square() : ScalarTerm::polynomial(toy_u.coefficients);
      ScalarTerm v = toy_v.pendulum ? ScalarTerm::negative_cosine() : ScalarTerm::polynomial(toy_v.coefficients);
      const bool is_pendulum = toy_u.pendulum && toy_v.pendulum;
      return std::make_unique<ToySeparable>(std::move(u), std::move(v), is_pendulum ? "pendulum" : "toy");
    }
    case SystemKind::Vortex:
      return std::make_unique<PointVortexSystem>(vortex_gamma);
    case SystemKind::Quadratic:
      return std::make_unique<QuadraticLinearSystem>(to_matrix(quadratic_a, "quadratic_a"),
                                                     to_matrix(quadratic_s, "quadratic_s"));
  }
  return nullptr;
}

std::vector<std::string_view> preset_names() {
  return {"pendulum-fig1a", "pendulum-fig1b", "pendulum-fig1c", "pendulum-fig1d", "vortex-leapfrog",
          "quadratic-zero"};
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig c;
  // Columns midpoint / trapezoidal, rows (3, 0) / (1.5, 0).
  if (name == "pendulum-fig1a" || name == "pendulum-fig1b" || name == "pendulum-fig1c" ||
      name == "pendulum-fig1d") {
    const char panel = name.back();
    c.method = (panel == 'a' || panel == 'c') ? MethodId::Midpoint : MethodId::Trapezoidal;
    c.initial_state = (panel == 'a' || panel == 'b') ? std::vector<double>{3.0, 0.0} : std::vector<double>{1.5, 0.0};
    c.h = 0.35;
    c.steps = 200;
    c.output_prefix = std::string(name);
    return c;
  }
  if (name == "vortex-leapfrog") {
    c.system = SystemKind::Vortex;
    c.vortex_gamma = {1.0, -1.0, 2.0, -2.0};
    c.vortex_positions = {{1.0, 1.0}, {1.0, -1.0}, {2.0, 1.0}, {2.0, -1.0}};
    c.initial_state.clear();
    c.h = 0.5;
    c.steps = 160;
    c.output_prefix = "vortex-leapfrog";
    return c;
  }
  if (name == "quadratic-zero") {
    c.system = SystemKind::Quadratic;
    c.quadratic_a = {{0.0, 0.5}, {-0.5, 0.0}};
    c.quadratic_s = {{0.0, 0.0}, {0.0, 0.0}};
    c.initial_state = {1.0, 0.0};
    c.output_prefix = "quadratic-zero";
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!kKnownKeys.contains(item.key())) throw ConfigError("unknown key '" + item.key() + "'");
  }

  ExperimentConfig c = doc.contains("preset") ? preset(get_as<std::string>(doc, "preset")) : ExperimentConfig{};

  if (doc.contains("system")) {
    const auto s = get_as<std::string>(doc, "system");
    if (s == "toy") {
      c.system = SystemKind::Toy;
    } else if (s == "pendulum") {
      c.system = SystemKind::Toy;
      c.toy_u = {};
      c.toy_v = {};
    } else if (s == "vortex") {
      c.system = SystemKind::Vortex;
    } else if (s == "quadratic") {
      c.system = SystemKind::Quadratic;
    } else {
      throw ConfigError("key 'system': unknown system '" + s + "'");
    }
  }
  if (doc.contains("toy_v")) c.toy_v = parse_term(doc.at("toy_v"), "toy_v");
  if (doc.contains("toy_u")) c.toy_u = parse_term(doc.at("toy_u"), "toy_u");
  if (doc.contains("vortex_gamma")) c.vortex_gamma = get_as<std::vector<double>>(doc, "vortex_gamma");
  if (doc.contains("vortex_positions")) {
    c.vortex_positions = get_as<std::vector<std::array<double, 2>>>(doc, "vortex_positions");
  }
  if (doc.contains("quadratic_a")) c.quadratic_a = get_as<std::vector<std::vector<double>>>(doc, "quadratic_a");
  if (doc.contains("quadratic_s")) c.quadratic_s = get_as<std::vector<std::vector<double>>>(doc, "quadratic_s");
  if (doc.contains("initial_state")) c.initial_state = get_as<std::vector<double>>(doc, "initial_state");

  if (doc.contains("method")) {
    const auto m = get_as<std::string>(doc, "method");
    const auto parsed = parse_method(m);
    if (!parsed) throw ConfigError("key 'method': unknown method '" + m + "'");
    c.method = *parsed;
  }
  if (doc.contains("h")) c.h = get_as<double>(doc, "h");
  if (doc.contains("steps")) {
    const auto steps = get_as<long long>(doc, "steps");
    if (steps < 1) throw ConfigError("key 'steps': must be >= 1");
    c.steps = static_cast<std::size_t>(steps);
  }

  if (doc.contains("starter")) {
    const auto s = get_as<std::string>(doc, "starter");
    const auto parsed = parse_starter_mode(s);
    if (!parsed) throw ConfigError("key 'starter': unknown starter '" + s + "'");
    c.starter = *parsed;
  }
  if (doc.contains("starter_epsilon")) c.starter_epsilon = get_as<double>(doc, "starter_epsilon");
  if (doc.contains("starter_direction")) {
    const json& d = doc.at("starter_direction");
    if (d.is_string()) {
      if (d.get<std::string>() != "alternating-unit") {
        throw ConfigError("key 'starter_direction': expected \"alternating-unit\" or an array");
      }
      c.starter_direction.reset();
    } else {
      c.starter_direction = get_as<std::vector<double>>(doc, "starter_direction");
    }
  }

  if (doc.contains("truncation")) {
    const auto t = get_as<std::string>(doc, "truncation");
    const auto parsed = parse_truncation(t);
    if (!parsed) throw ConfigError("key 'truncation': expected \"zero\" or \"two\"");
    c.truncation = *parsed;
  }
  if (doc.contains("reference_dt_divisor")) c.reference_dt_divisor = get_as<int>(doc, "reference_dt_divisor");
  if (doc.contains("newton_tol")) c.newton_tol = get_as<double>(doc, "newton_tol");
  if (doc.contains("newton_max_iter")) c.newton_max_iter = get_as<int>(doc, "newton_max_iter");
  if (doc.contains("newton_jacobian")) {
    const auto j = get_as<std::string>(doc, "newton_jacobian");
    if (j == "analytic") {
      c.newton_jacobian = JacobianMode::Analytic;
    } else if (j == "finite-difference") {
      c.newton_jacobian = JacobianMode::FiniteDifference;
    } else {
      throw ConfigError("key 'newton_jacobian': expected \"analytic\" or \"finite-difference\"");
    }
  }
  if (doc.contains("output_prefix")) c.output_prefix = get_as<std::string>(doc, "output_prefix");
  if (doc.contains("h_list")) c.h_list = get_as<std::vector<double>>(doc, "h_list");
  if (doc.contains("t_end")) c.t_end = get_as<double>(doc, "t_end");
  if (doc.contains("subtract_baseline")) c.subtract_baseline = get_as<bool>(doc, "subtract_baseline");
  if (doc.contains("parasite_window")) {
    const auto w = get_as<long long>(doc, "parasite_window");
    if (w < 1) throw ConfigError("key 'parasite_window': must be >= 1");
    c.parasite_window = static_cast<std::size_t>(w);
  }

  validate(c);
  return c;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

json to_json(const ExperimentConfig& c) {
  json doc;
  doc["system"] = std::string(to_string(c.system));
  doc["toy_v"] = term_to_json(c.toy_v);
  doc["toy_u"] = term_to_json(c.toy_u);
  doc["vortex_gamma"] = c.vortex_gamma;
  doc["vortex_positions"] = c.vortex_positions;
  doc["quadratic_a"] = c.quadratic_a;
  doc["quadratic_s"] = c.quadratic_s;
  doc["initial_state"] = c.initial_state;
  doc["method"] = std::string(to_string(c.method));
  doc["h"] = c.h;
  doc["steps"] = c.steps;
  doc["starter"] = std::string(to_string(c.starter));
  doc["starter_epsilon"] = c.starter_epsilon;
  doc["starter_direction"] = c.starter_direction ? json(*c.starter_direction) : json("alternating-unit");
  doc["truncation"] = std::string(to_string(c.truncation));
  doc["reference_dt_divisor"] = c.reference_dt_divisor;
  doc["newton_tol"] = c.newton_tol;
  doc["newton_max_iter"] = c.newton_max_iter;
  doc["newton_jacobian"] = std::string(to_string(c.newton_jacobian));
  doc["output_prefix"] = c.output_prefix;
  doc["h_list"] = c.h_list;
  doc["t_end"] = c.t_end;
  doc["subtract_baseline"] = c.subtract_baseline;
  doc["parasite_window"] = c.parasite_window;
  return doc;
}

void validate(const ExperimentConfig& c) {
  if (!(c.h > 0.0) || !std::isfinite(c.h)) throw ConfigError("h must be finite and > 0");
  if (c.steps < 1) throw ConfigError("steps must be >= 1");
  if (c.reference_dt_divisor < 1) throw ConfigError("reference_dt_divisor must be >= 1");
  if (!(c.newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
  if (c.newton_max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) throw ConfigError("t_end must be finite and > 0");
  if (!(c.starter_epsilon >= 0.0) || !std::isfinite(c.starter_epsilon)) {
    throw ConfigError("starter_epsilon must be finite and >= 0");
  }
  if (c.starter != StarterSpec::Mode::Perturbed && c.starter_epsilon != 0.0) {
    throw ConfigError("starter_epsilon must be 0 unless starter is \"perturbed\"");
  }
  for (const double h : c.h_list) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h_list entries must be finite and > 0");
  }

  std::size_t dim = 0;
  switch (c.system) {
    case SystemKind::Toy:
      dim = 2;
      if (c.initial_state.size() != 2) throw ConfigError("toy systems need a 2-entry initial_state");
      break;
    case SystemKind::Vortex: {
      if (c.vortex_gamma.size() < 2) throw ConfigError("vortex_gamma needs at least two strengths");
      if (c.vortex_positions.size() != c.vortex_gamma.size()) {
        throw ConfigError("vortex_positions and vortex_gamma differ in length");
      }
      for (const double g : c.vortex_gamma) {
        if (g == 0.0 || !std::isfinite(g)) throw ConfigError("vortex strengths must be finite and nonzero");
      }
      for (std::size_t j = 0; j < c.vortex_positions.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
          if (c.vortex_positions[j] == c.vortex_positions[k]) {
            throw ConfigError("vortex positions " + std::to_string(k) + " and " + std::to_string(j) + " coincide");
          }
        }
      }
      dim = 2 * c.vortex_gamma.size();
      break;
    }
    case SystemKind::Quadratic:
      dim = c.quadratic_a.size();
      if (dim == 0 || c.quadratic_s.size() != dim) throw ConfigError("quadratic_a and quadratic_s must be N x N");
      if (c.initial_state.size() != dim) throw ConfigError("initial_state must have N entries");
      break;
  }
  if (!finite_all(c.initial_state)) throw ConfigError("initial_state must be finite");
  if (c.starter_direction && c.starter_direction->size() != dim) {
    throw ConfigError("starter_direction has the wrong length");
  }

  // Surface construction-time errors (singular A_skew, bad matrices) as config errors.
  try {
    (void)c.make_system();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace degenlag::cli
