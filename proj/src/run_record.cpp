#include "mfglab/run_record.hpp"

#include <iomanip>

namespace mfglab {

void RunRecord::append(double t,
                       const std::vector<std::pair<std::string, double>>& row) {
  if (!times.empty() && t <= times.back())
    throw DomainError("RunRecord: times must be strictly increasing");
  if (columns.empty())
    for (const auto& [name, _] : row) columns.push_back(name);
  times.push_back(t);
  for (const auto& [name, value] : row) series[name].push_back(value);
  for (const auto& name : columns)
    if (series[name].size() != times.size())
      throw DomainError("RunRecord: ragged series for column " + name);
}

const std::vector<double>& RunRecord::at(const std::string& name) const {
  auto it = series.find(name);
  if (it == series.end()) throw DomainError("RunRecord: no series " + name);
  return it->second;
}

double RunRecord::last(const std::string& name) const {
  const auto& s = at(name);
  if (s.empty()) throw DomainError("RunRecord: empty series " + name);
  return s.back();
}

void RunRecord::write_csv(std::ostream& os) const {
  os << "t";
  for (const auto& name : columns) os << "," << name;
  os << "\n";
  os << std::setprecision(17);
  for (size_t k = 0; k < times.size(); ++k) {
    os << times[k];
    for (const auto& name : columns) os << "," << series.at(name)[k];
    os << "\n";
  }
}

void write_snapshot_csv(std::ostream& os, const SystemState& s,
                        const std::string& col1, const std::string& col2) {
  os << "x," << col1 << "," << col2 << "\n";
  os << std::setprecision(17);
  for (int i = 0; i < s.first.grid.n_cells; ++i)
    os << s.first.grid.center(i) << "," << s.first.values[i] << ","
       << s.second.values[i] << "\n";
}

}  // namespace mfglab
