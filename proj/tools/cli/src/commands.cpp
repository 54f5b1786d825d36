#include <algorithm>
#include <fstream>

#include "degenlag/analysis.hpp"
#include "degenlag/cli/commands.hpp"

namespace degenlag::cli {

namespace {

std::filesystem::path with_suffix(const ExperimentConfig& c, std::string_view suffix) {
  return c.output_prefix + std::string(suffix);
}

// Reference curve on a grid h / divisor, sampled back onto the h grid.
Trajectory sampled_flow(const VectorField& field, const Vector& q0, const ExperimentConfig& c) {
  const double span = c.h * static_cast<double>(c.steps);
  const Trajectory fine = reference_solve(field, q0, span, c.h / c.reference_dt_divisor);
  Trajectory coarse = subsample(fine, static_cast<std::size_t>(c.reference_dt_divisor));
  coarse.h = c.h;
  return coarse;
}

void write_plot_script(const ExperimentConfig& c, std::size_t dim) {
  const std::filesystem::path path = with_suffix(c, ".gp");
  std::ofstream gp(path, std::ios::binary | std::ios::trunc);
  if (!gp) throw ConfigError("cannot write '" + path.string() + "'");
  const std::string base = std::filesystem::path(c.output_prefix).filename().string();
  gp << "set datafile separator ','\n"
     << "set key outside\n"
     << "set size ratio -1\n"
     << "set terminal pngcairo size 900,700\n"
     << "set output '" << base << ".png'\n";
  // One planar pair per curve: (q, p) for two-dimensional systems, (x_k, y_k) per vortex.
  gp << "plot";
  for (std::size_t k = 0; 2 * k + 1 < dim; ++k) {
    const std::size_t cx = 2 * k + 2;
    const std::size_t cy = 2 * k + 3;
    const std::string pair = "u " + std::to_string(cx) + ":" + std::to_string(cy);
    gp << (k ? ", \\\n    " : " ") << "'" << base << "_exact.csv' " << pair << " w l dt 2 lc " << k + 1
       << " t 'exact " << k + 1 << "'"
       << ", \\\n    '" << base << "_modified.csv' " << pair << " w l lc " << k + 1 << " t 'modified "
       << k + 1 << "'"
       << ", \\\n    '" << base << "_discrete.csv' " << pair << " w p pt 7 ps 0.6 lc " << k + 1
       << " t 'discrete " << k + 1 << "'";
  }
  gp << "\n";
}

}  // namespace

int cmd_simulate(const ExperimentConfig& c, std::ostream& out) {
  const auto system = c.make_system();
  const Vector q0 = c.initial_vector();
  const std::vector<std::string> header = state_header(system->dim());

  const IntegrationResult result = integrate(c.method, *system, q0, c.h, c.steps, c.starter_spec(), c.newton());
  write_csv(with_suffix(c, "_discrete.csv"), header, trajectory_rows(result.trajectory));
  if (!result.ok()) throw *result.error;

  const Trajectory exact = sampled_flow([&](const Vector& q) { return el_field(*system, q); }, q0, c);
  write_csv(with_suffix(c, "_exact.csv"), header, trajectory_rows(exact));
  const Trajectory modified = sampled_flow(principal_vector_field(c.method, *system, c.h, c.truncation), q0, c);
  write_csv(with_suffix(c, "_modified.csv"), header, trajectory_rows(modified));
  write_plot_script(c, system->dim());

  out << system->name() << " " << to_string(c.method) << " h=" << c.h << " steps=" << c.steps
      << " -> " << c.output_prefix << "_{discrete,exact,modified}.csv\n";
  return kExitOk;
}

int cmd_parasites(const ExperimentConfig& c, std::ostream& out) {
  const auto system = c.make_system();
  const Vector q0 = c.initial_vector();
  const std::size_t n = system->dim();

  const IntegrationResult result = integrate(c.method, *system, q0, c.h, c.steps, c.starter_spec(), c.newton());
  if (!result.ok()) throw *result.error;
  ParasiteDecomposition dec = decompose_parasites(result.trajectory);
  if (c.subtract_baseline) {
    const IntegrationResult base = integrate(c.method, *system, q0, c.h, c.steps, StarterSpec{}, c.newton());
    if (!base.ok()) throw *base.error;
    dec = subtract_baseline(dec, decompose_parasites(base.trajectory));
  }

  std::vector<std::string> header{"t"};
  for (std::size_t k = 1; k <= n; ++k) header.push_back("x_" + std::to_string(k));
  for (std::size_t k = 1; k <= n; ++k) header.push_back("y_" + std::to_string(k));
  header.emplace_back("amplitude");
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> indicator_rows;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    std::vector<double> row{dec.times[i]};
    row.insert(row.end(), dec.x[i].data(), dec.x[i].data() + n);
    row.insert(row.end(), dec.y[i].data(), dec.y[i].data() + n);
    row.push_back(dec.amplitude[i]);
    rows.push_back(std::move(row));
    indicator_rows.push_back({dec.times[i], parasite_growth_indicator(*system, dec.x[i])});
  }
  write_csv(with_suffix(c, "_parasites.csv"), header, rows);
  write_csv(with_suffix(c, "_indicator.csv"), {"t", "indicator"}, indicator_rows);

  out << "parasites: " << dec.size() << " samples -> " << c.output_prefix << "_parasites.csv\n";
  if (dec.size() >= c.parasite_window) {
    const Envelope env = parasite_envelope(dec, c.parasite_window);
    const auto [lo, hi] = std::minmax_element(env.values.begin(), env.values.end());
    out << "envelope (window " << c.parasite_window << "): first " << env.values.front()
        << " last " << env.values.back() << " min " << *lo << " max "
        << *hi << "\n";
  }
  return kExitOk;
}

int cmd_defect_order(const ExperimentConfig& c, std::ostream& out) {
  if (c.h_list.size() < 3) throw ConfigError("defect-order needs at least three h values (h_list or --h-list)");
  const auto system = c.make_system();
  const DefectReport report =
      defect_order(c.method, *system, c.truncation, c.initial_vector(), c.t_end, c.h_list, c.reference_dt_divisor);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < report.h_values.size(); ++i) rows.push_back({report.h_values[i], report.defect_norms[i]});
  const std::string slope = report.degenerate ? "nan" : format_double(report.slope);
  write_csv(with_suffix(c, "_defect.csv"), {"h", "defect"}, rows, {"slope", slope});

  if (report.degenerate) {
    out << "degenerate: zero defect\n";
    return kExitOk;
  }
  out << "slope: " << report.slope << " (r^2 = " << report.r_squared << ")\n";
  if (!report.valid()) out << "warning: r^2 below " << DefectReport::kMinRSquared << ", slope not reliable\n";
  return kExitOk;
}

}  // namespace degenlag::cli
