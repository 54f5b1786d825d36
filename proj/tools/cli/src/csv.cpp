#include <cstdio>
#include <fstream>

#include "degenlag/cli/commands.hpp"

namespace degenlag::cli {

std::string format_double(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, const std::vector<std::string>& footer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!footer.empty()) {
    for (std::size_t k = 0; k < footer.size(); ++k) out << (k ? "," : "") << footer[k];
    out << '\n';
  }
  if (!out) throw ConfigError("write to '" + path.string() + "' failed");
}

std::vector<std::string> state_header(std::size_t dim) {
  std::vector<std::string> header{"t"};
  for (std::size_t k = 1; k <= dim; ++k) header.push_back("q_" + std::to_string(k));
  return header;
}

std::vector<std::vector<double>> trajectory_rows(const Trajectory& traj) {
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (std::size_t j = 0; j < traj.size(); ++j) {
    std::vector<double> row{traj.time(j)};
    row.insert(row.end(), traj.points[j].data(), traj.points[j].data() + traj.points[j].size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace degenlag::cli
