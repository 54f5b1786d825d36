#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "degenlag/cli/commands.hpp"
#include "degenlag/modified.hpp"
#include "degenlag/systems.hpp"

namespace degenlag::cli {

namespace {

constexpr int kSamples = 100;

struct SuiteResult {
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

using Rng = std::mt19937_64;

Vector uniform_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = dist(rng);
  return v;
}

SuiteResult suite_recombination(Rng& rng, const SelftestOptions&) {
  const ToySeparable pendulum = make_pendulum();
  SuiteResult r{true, 0.0, 1e-13};
  for (int i = 0; i < kSamples; ++i) {
    for (const MethodId m : {MethodId::Midpoint, MethodId::Trapezoidal}) {
      const double h = (i % 2 == 0) ? 0.1 : 0.35;
      std::array<DoubledState, 3> s;
      for (auto& st : s) st = {uniform_vector(rng, 2, -2.0, 2.0), uniform_vector(rng, 2, -0.5, 0.5)};
      const DoubledVector a = doubled_del_residual(m, pendulum, s[0], s[1], s[2], h);
      const DoubledVector b = recombined_del_residual(m, pendulum, s[0], s[1], s[2], h, true);
      r.deviation = std::max({r.deviation, inf_norm(a.x - b.x), inf_norm(a.y - b.y)});
    }
  }
  r.pass = r.deviation < r.tolerance;
  return r;
}

SuiteResult suite_toy(Rng& rng, const SelftestOptions& options) {
  const ToySeparable pendulum = make_pendulum();
  const ToySeparable cubic(ScalarTerm::polynomial({0.0, 0.3, 0.5, 0.2}), ScalarTerm::polynomial({0.0, 0.0, 0.5, 0.0, 0.1}));
  const bool mutate = options.mutate == "f2-sign";
  SuiteResult r{true, 0.0, 1e-10};
  for (const ToySeparable* toy : {&pendulum, &cubic}) {
    for (int i = 0; i < kSamples; ++i) {
      const Vector q = uniform_vector(rng, 2, -2.0, 2.0);
      for (const MethodId m : {MethodId::Midpoint, MethodId::Trapezoidal}) {
        for (const double h : {0.1, 0.35}) {
          Vector generic = principal_field(m, *toy, q, h, TruncationOrder::Two);
          if (mutate) generic = 2.0 * el_field(*toy, q) - generic;
          const Vector closed = toy_principal_field_closed_form(m, *toy, q(0), q(1), h);
          r.deviation = std::max(r.deviation, inf_norm(generic - closed));
        }
      }
    }
  }
  r.pass = r.deviation < r.tolerance;
  return r;
}

SuiteResult suite_vortex(Rng& rng, const SelftestOptions&) {
  SuiteResult r{true, 0.0, 1e-12};
  std::uniform_real_distribution<double> strength(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  int done = 0;
  while (done < kSamples) {
    std::vector<double> gamma(4);
    for (double& g : gamma) g = (sign(rng) ? 1.0 : -1.0) * strength(rng);
    const PointVortexSystem system(gamma);
    const Vector z = uniform_vector(rng, 8, -2.0, 2.0);
    double min_sep = INFINITY;
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < j; ++k) min_sep = std::min(min_sep, (z.segment<2>(2 * j) - z.segment<2>(2 * k)).norm());
    }
    if (min_sep < 0.1) continue;  // keep velocities moderate
    r.deviation = std::max(r.deviation, inf_norm(el_field(system, z) - vortex_rhs_complex(system, z)));
    ++done;
  }
  r.pass = r.deviation < r.tolerance;
  return r;
}

struct Suite {
  std::string_view name;
  std::function<SuiteResult(Rng&, const SelftestOptions&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"recombination", suite_recombination},
      {"toy-closed-form", suite_toy},
      {"vortex", suite_vortex},
  };
  return all;
}

}  // namespace

std::vector<std::string_view> selftest_suites() {
  std::vector<std::string_view> names;
  for (const auto& s : suites()) names.push_back(s.name);
  return names;
}

int cmd_selftest(const SelftestOptions& options, std::ostream& out) {
  if (!options.only.empty()) {
    const auto names = selftest_suites();
    if (std::find(names.begin(), names.end(), options.only) == names.end()) {
      throw ConfigError("unknown selftest suite '" + options.only + "'");
    }
  }
  if (!options.mutate.empty() && options.mutate != "f2-sign") {
    throw ConfigError("unknown mutation '" + options.mutate + "'");
  }
  bool all_pass = true;
  for (const auto& suite : suites()) {
    if (!options.only.empty() && suite.name != options.only) continue;
    // Each suite gets its own stream so --only reproduces the full run.
    Rng rng(options.seed ^ std::hash<std::string_view>{}(suite.name));
    const SuiteResult r = suite.run(rng, options);
    out << (r.pass ? "PASS " : "FAIL ") << suite.name << " max deviation " << format_double(r.deviation)
        << " (tolerance " << format_double(r.tolerance) << ")\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitSelftestFailed;
}

}  // namespace degenlag::cli
