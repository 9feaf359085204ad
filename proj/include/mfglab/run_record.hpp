#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mfglab/state.hpp"

namespace mfglab {

/// Time series of integral invariants and norms logged along a run, plus
/// optional solution snapshots and the final state.
struct RunRecord {
  std::vector<double> times;
  std::vector<std::string> columns;                   // fixed at first append
  std::map<std::string, std::vector<double>> series;
  std::vector<SystemState> snapshots;
  std::optional<SystemState> final_state;
  std::optional<double> blowup_time;  // set if the run stopped on NaN/positivity

  void append(double t, const std::vector<std::pair<std::string, double>>& row);

  const std::vector<double>& at(const std::string& name) const;
  double last(const std::string& name) const;

  /// CSV with a header row; first column is t.
  void write_csv(std::ostream& os) const;
};

void write_snapshot_csv(std::ostream& os, const SystemState& s,
                        const std::string& col1, const std::string& col2);

}  // namespace mfglab
