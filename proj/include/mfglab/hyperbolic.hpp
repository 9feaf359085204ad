#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mfglab/run_record.hpp"
#include "mfglab/state.hpp"

namespace mfglab {

/// Flux map and wave-speed estimate for a 2x2 conservation law
/// U_t + F(U)_x = 0.
struct FluxFunction {
  std::string name;
  std::function<std::array<double, 2>(double, double)> flux;
  std::function<double(double, double)> max_speed;
};

/// v_t + (H(v) - g(m))_x = 0, m_t - (m H'(v))_x = 0.
/// Eigenvalues +-sqrt(H'^2 + m g' H''); real iff g is increasing.
FluxFunction vm_flux(const ModelSpec& model);

/// z_t = ((1/3 + a/6 - a^2/2) v^3 + a v z)_x, v_t = (z - (a/2) v^2)_x,
/// the conservation-law form of the wave formulation in the z variable.
FluxFunction system3_flux(double alpha);

/// v_t - w_x = 0, w_t - sigma(v)_x = 0 with sigma(v) = v + v^3/3.
FluxFunction psystem_flux();

struct SolverConfig {
  double cfl = 0.45;
  double t_end = 1.0;
  double eps_art = 0.0;  // artificial viscosity (p-system)
  int log_stride = 1;    // record every k-th step
  int snapshot_stride = 0;  // 0: only final snapshot
};

/// Named integral observable E evaluated on (first, second) cell values.
struct NamedEntropy {
  std::string name;
  std::function<double(double, double)> value;
};

/// One local Lax-Friedrichs (Rusanov) update in conservation form.
/// Throws CflError if dt * lambda_max / dx > 1.
SystemState lax_friedrichs_step(const SystemState& s, const FluxFunction& flux,
                                double dt);

/// Largest interface wave speed of the current state.
double max_wave_speed(const SystemState& s, const FluxFunction& flux);

RunRecord solve_ff_vm(const GridField& v0, const GridField& m0,
                      const ModelSpec& model, const SolverConfig& cfg,
                      const std::vector<NamedEntropy>& entropies = {});

RunRecord solve_system3(const GridField& z0, const GridField& v0, double alpha,
                        const SolverConfig& cfg,
                        const std::vector<NamedEntropy>& entropies = {});

/// Viscous runs use an operator-split step: LF update, then an implicit
/// periodic heat solve for both components. Records the running invariant
/// region monitor sup_t (|v|_inf + |w|_inf) as series "linf_sum".
RunRecord solve_psystem(const GridField& v0, const GridField& w0, double eps,
                        const SolverConfig& cfg,
                        const std::vector<NamedEntropy>& entropies = {});

/// Initial data for the wave formulation: v0 = u0_x (central differences),
/// w0 = g(m0) - H(v0).
std::pair<GridField, GridField> wave_initial_data(const GridField& u0,
                                                  const GridField& m0,
                                                  const ModelSpec& model);

/// L-infinity bound of the invariant region spanned by the initial data of
/// the p-system: max of |v| + |w| over the region between the extreme
/// initial Riemann invariants w +- Lambda(v), Lambda' = sqrt(sigma').
double psystem_invariant_region_bound(const GridField& v0, const GridField& w0);

/// Solve a periodic tridiagonal system (I - c * second difference) x = rhs.
std::vector<double> heat_solve_periodic(const std::vector<double>& rhs, double c);

}  // namespace mfglab
