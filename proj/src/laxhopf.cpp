#include "mfglab/laxhopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mfglab {

HjSolution make_hj(std::function<double(double)> u0,
                   HjSolution::Orientation orientation, int n_samples) {
  if (n_samples < 16) throw DomainError("make_hj: n_samples too small");
  if (std::abs(u0(0.0) - u0(1.0)) > 1e-10)
    throw DomainError("make_hj: u0 is not 1-periodic");
  HjSolution sol;
  sol.orientation = orientation;
  const double h = 1.0 / n_samples;
  double lip = 0.0;
  for (int i = 0; i < n_samples; ++i)
    lip = std::max(lip, std::abs(u0((i + 1) * h) - u0(i * h)) / h);
  sol.u0 = std::move(u0);
  sol.lipschitz = lip;
  return sol;
}

double lax_hopf_u(const HjSolution& sol, double x, double t) {
  if (t < 0.0) throw DomainError("lax_hopf_u: t must be >= 0");
  if (t == 0.0) return sol.u0(x);
  const bool rev = sol.orientation == HjSolution::Orientation::Reversed;
  // Reversed case: u(x,t) = sup_y u0(y) - t G*((y-x)/t), which is the
  // forward formula for data -u0(-y) reflected back.
  auto objective = [&](double y) {
    if (rev) return t * G_conjugate((y - x) / t) - sol.u0(y);
    return t * G_conjugate((x - y) / t) + sol.u0(y);
  };
  const double R =
      t * std::max(1.0, std::sqrt(1.0 + sol.lipschitz * sol.lipschitz)) +
      sol.window_margin;
  const int n_scan = std::max(512, static_cast<int>(std::ceil(2.0 * R * 2048)));
  const double h = 2.0 * R / n_scan;
  int best = 0;
  double best_val = objective(x - R);
  for (int i = 1; i <= n_scan; ++i) {
    const double val = objective(x - R + i * h);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  if (best == 0 || best == n_scan)
    throw WindowError("lax_hopf_u: minimizer at the search-window edge");
  const double y_lo = x - R + (best - 1) * h, y_hi = x - R + (best + 1) * h;
  const double y_star = golden_min(objective, y_lo, y_hi, 1e-12);
  const double val = std::min(best_val, objective(y_star));
  return rev ? -val : val;
}

double hj_ux(const HjSolution& sol, double x, double t) {
  const double h = sol.fd_h;
  return (lax_hopf_u(sol, x + h, t) - lax_hopf_u(sol, x - h, t)) / (2.0 * h);
}

std::optional<double> density_from_u(const HjSolution& sol, double x,
                                     double t) {
  const double h = sol.fd_h;
  const double um = lax_hopf_u(sol, x - h, t);
  const double uc = lax_hopf_u(sol, x, t);
  const double up = lax_hopf_u(sol, x + h, t);
  const double s_left = (uc - um) / h, s_right = (up - uc) / h;
  if (std::abs(s_right - s_left) > sol.shock_jump_tol) return std::nullopt;
  const double ux = 0.5 * (s_left + s_right);
  return std::exp(0.5 * ux * ux - G_of_p(ux));
}

double shock_time(const HjSolution& sol, int n_grid) {
  if (n_grid < 64) throw DomainError("shock_time: n_grid too small");
  const double h = 1.0 / n_grid;
  std::vector<double> c(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    const double y = (i + 0.5) * h;
    const double up = (sol.u0(y + h) - sol.u0(y - h)) / (2.0 * h);
    c[i] = G_prime(up);
  }
  double max_comp = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double dc =
        (c[(i + 1) % n_grid] - c[(i - 1 + n_grid) % n_grid]) / (2.0 * h);
    max_comp = std::max(max_comp, -dc);
  }
  if (max_comp <= 1e-14) return std::numeric_limits<double>::infinity();
  return 1.0 / max_comp;
}

StationaryReport stationary_limit_check(const HjSolution& sol, double horizon,
                                        int n_grid) {
  if (!(horizon > 1.0))
    throw DomainError("stationary_limit_check: horizon must exceed 1");
  auto osc = [&](double t) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < n_grid; ++i) {
      const double u = lax_hopf_u(sol, (i + 0.5) / n_grid, t);
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
    return hi - lo;
  };
  StationaryReport rep;
  rep.osc_t1 = osc(1.0);
  rep.osc_horizon = osc(horizon);
  const double x0 = 0.25, t1 = 0.5 * horizon, t2 = horizon;
  rep.gbar_est =
      -(lax_hopf_u(sol, x0, t2) - lax_hopf_u(sol, x0, t1)) / (t2 - t1);
  return rep;
}

}  // namespace mfglab
