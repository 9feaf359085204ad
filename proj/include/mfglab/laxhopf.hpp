#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mfglab/grid.hpp"
#include "mfglab/models.hpp"

namespace mfglab {

/// Variational (Hopf-Lax) solution of u_t + G(u_x) = 0 (forward) or
/// u_t - G(u_x) = 0 (reversed) with 1-periodic initial data u0.
struct HjSolution {
  enum class Orientation { Forward, Reversed };

  std::function<double(double)> u0;
  Orientation orientation = Orientation::Forward;
  double lipschitz = 0.0;    // estimated sup |u0'|
  double window_margin = 0.05;
  double fd_h = 1e-4;        // step for u_x difference quotients
  double shock_jump_tol = 0.05;  // one-sided slope mismatch marking a shock
};

/// Builds an HjSolution, estimating the Lipschitz constant from n_samples
/// difference quotients. Throws DomainError if u0 is not periodic to 1e-10.
HjSolution make_hj(std::function<double(double)> u0,
                   HjSolution::Orientation orientation =
                       HjSolution::Orientation::Forward,
                   int n_samples = 4096);

/// u(x,t) = inf_y t G*((x-y)/t) + u0(y), infimum over a window
/// [x - R, x + R], R = t max(1, sup|G'|) + margin; grid scan plus
/// golden-section refinement, ties toward the smallest y. Throws
/// WindowError if the minimizer touches the window edge.
double lax_hopf_u(const HjSolution& sol, double x, double t);

/// m = e^{H(u_x) - G(u_x)} with H(p) = p^2/2 and u_x by centered
/// differencing. Returns nullopt where the one-sided difference quotients
/// disagree beyond shock_jump_tol (gradient discontinuity: shock mask).
std::optional<double> density_from_u(const HjSolution& sol, double x, double t);

/// Centered difference quotient of u in x with step sol.fd_h.
double hj_ux(const HjSolution& sol, double x, double t);

/// T* = 1 / max_y(-d/dy G'(u0'(y))) from differencing on a fine grid;
/// +infinity when the max is nonpositive (no converging characteristics).
double shock_time(const HjSolution& sol, int n_grid = 8192);

struct StationaryReport {
  double osc_t1 = 0.0;       // spatial oscillation of u at t = 1
  double osc_horizon = 0.0;  // spatial oscillation at t = horizon
  double gbar_est = 0.0;     // -(u(x0,t2) - u(x0,t1)) / (t2 - t1)
};

/// Long-time check: u(.,t) should flatten and drift at rate -min G = 0.
StationaryReport stationary_limit_check(const HjSolution& sol, double horizon,
                                        int n_grid = 256);

}  // namespace mfglab
