#pragma once

#include <string>
#include <vector>

#include "mfglab/entropy.hpp"
#include "mfglab/run_record.hpp"

namespace mfglab {

struct ParabolicConfig {
  double cfl = 0.45;
  double t_end = 1.0;
  double diff_safety = 0.4;  // dt <= diff_safety * dx^2 / eps
  int log_stride = 1;
  int snapshot_stride = 0;
};

/// Evolve v_t + (H(v) - g(m))_x = eps v_xx, m_t - (m H'(v))_x = eps m_xx.
/// Means are projected first (subtract mean of v0, normalize m0 to mass 1).
/// Logged series: mass, mean_v, I (entropy integral relative to the
/// equilibrium (0,1)), D (dissipation integral), l1_v, l1_m, linf_v, linf_m.
RunRecord solve_parabolic(const GridField& v0, const GridField& m0,
                          const ModelSpec& model, const ParabolicConfig& cfg);

/// eps * integral of (v_x, m_x)^T D^2E (v_x, m_x) with central gradients.
double dissipation_rate(const SystemState& s, const EntropyFn& E,
                        const ModelSpec& model);

struct DecayReport {
  bool monotone = true;          // I nonincreasing up to 1e-10 per step
  bool exponential = true;       // I(t) <= e^{-eps t / C0} I(0) (1 + 0.05)
  double c0 = 0.0;               // Poincare constant used in the bound
  double worst_ratio = 0.0;      // max_t I(t) / (e^{-eps t / C0} I(0))
  std::vector<std::string> violations;
};

/// Checks the monotone and exponential decay of I(t) along a parabolic run.
/// C0 = max of the two Poincare constants of H and P over the observed
/// ranges of v and m.
DecayReport monotone_decay_check(const RunRecord& rec, const ModelSpec& model);

}  // namespace mfglab
