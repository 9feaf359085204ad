#include "mfglab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace mfglab {

namespace {

double safe_sqrt_speed(double speed_sq, const char* what) {
  if (speed_sq < 0.0) {
    if (speed_sq < -1e-10)
      throw HyperbolicityError(std::string(what) +
                               ": negative squared wave speed (elliptic state)");
    speed_sq = 0.0;
  }
  return std::sqrt(speed_sq);
}

}  // namespace

FluxFunction vm_flux(const ModelSpec& model) {
  const auto H = model.hamiltonian;
  const auto g = model.coupling;
  FluxFunction f;
  f.name = "vm";
  f.flux = [H, g](double v, double m) -> std::array<double, 2> {
    return {H.value(v) - g.value(m), -m * H.d1(v)};
  };
  f.max_speed = [H, g](double v, double m) {
    const double h1 = H.d1(v);
    return safe_sqrt_speed(h1 * h1 + m * g.d1(m) * H.d2(v), "vm_flux");
  };
  return f;
}

FluxFunction system3_flux(double alpha) {
  const double c3 = 1.0 / 3.0 + alpha / 6.0 - alpha * alpha / 2.0;
  // lambda^2 = (3 c3 + alpha^2) v^2 + alpha z
  const double c_sq = 3.0 * c3 + alpha * alpha;
  FluxFunction f;
  f.name = "system3";
  f.flux = [c3, alpha](double z, double v) -> std::array<double, 2> {
    return {-(c3 * v * v * v + alpha * v * z),
            -(z - 0.5 * alpha * v * v)};
  };
  f.max_speed = [c_sq, alpha](double z, double v) {
    return safe_sqrt_speed(c_sq * v * v + alpha * z, "system3_flux");
  };
  return f;
}

FluxFunction psystem_flux() {
  FluxFunction f;
  f.name = "psystem";
  f.flux = [](double v, double w) -> std::array<double, 2> {
    return {-w, -stress_sigma(v)};
  };
  f.max_speed = [](double v, double) { return std::sqrt(1.0 + v * v); };
  return f;
}

double max_wave_speed(const SystemState& s, const FluxFunction& flux) {
  double lam = 0.0;
  for (int i = 0; i < s.first.grid.n_cells; ++i)
    lam = std::max(lam, flux.max_speed(s.first.values[i], s.second.values[i]));
  return lam;
}

SystemState lax_friedrichs_step(const SystemState& s, const FluxFunction& flux,
                                double dt) {
  const int n = s.first.grid.n_cells;
  const double dx = s.first.grid.dx();

  std::vector<std::array<double, 2>> F(n);
  std::vector<double> a(n);
  double lam_max = 0.0;
  for (int i = 0; i < n; ++i) {
    F[i] = flux.flux(s.first.values[i], s.second.values[i]);
    a[i] = flux.max_speed(s.first.values[i], s.second.values[i]);
    lam_max = std::max(lam_max, a[i]);
  }
  if (dt * lam_max / dx > 1.0 + 1e-12)
    throw CflError("lax_friedrichs_step: dt * lambda_max / dx > 1");

  std::vector<double> u1(n), u2(n);
  for (int i = 0; i < n; ++i) {
    const int ip = s.first.grid.wrap(i + 1), im = s.first.grid.wrap(i - 1);
    const double ar = std::max(a[i], a[ip]);  // interface i+1/2
    const double al = std::max(a[im], a[i]);  // interface i-1/2
    for (int k = 0; k < 2; ++k) {
      const auto& U = (k == 0) ? s.first.values : s.second.values;
      const double fr =
          0.5 * (F[i][k] + F[ip][k]) - 0.5 * ar * (U[ip] - U[i]);
      const double fl =
          0.5 * (F[im][k] + F[i][k]) - 0.5 * al * (U[i] - U[im]);
      ((k == 0) ? u1 : u2)[i] = U[i] - dt / dx * (fr - fl);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(u1[i]) || !std::isfinite(u2[i]))
      throw StabilityError("lax_friedrichs_step: non-finite state");

  return SystemState(s.variant, GridField(s.first.grid, std::move(u1)),
                     GridField(s.first.grid, std::move(u2)), s.t + dt);
}

std::vector<double> heat_solve_periodic(const std::vector<double>& rhs,
                                        double c) {
  const int n = static_cast<int>(rhs.size());
  if (c == 0.0) return rhs;
  // (I - c D2): diagonal 1 + 2c, off-diagonal and corners -c.
  // Sherman-Morrison on top of a plain Thomas solve.
  const double b = 1.0 + 2.0 * c, off = -c;
  const double gamma = -b;
  auto thomas = [&](std::vector<double> d) {
    std::vector<double> bb(n, b), x(n);
    bb[0] = b - gamma;
    bb[n - 1] = b - off * off / gamma;
    for (int i = 1; i < n; ++i) {
      const double w = off / bb[i - 1];
      bb[i] -= w * off;
      d[i] -= w * d[i - 1];
    }
    x[n - 1] = d[n - 1] / bb[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (d[i] - off * x[i + 1]) / bb[i];
    return x;
  };
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = off;
  const std::vector<double> y = thomas(rhs);
  const std::vector<double> q = thomas(u);
  const double vy = y[0] + (off / gamma) * y[n - 1];
  const double vq = q[0] + (off / gamma) * q[n - 1];
  std::vector<double> x(n);
  const double fac = vy / (1.0 + vq);
  for (int i = 0; i < n; ++i) x[i] = y[i] - fac * q[i];
  return x;
}

namespace {

SystemState diffuse(const SystemState& s, double eps, double dt) {
  const double c = eps * dt / (s.first.grid.dx() * s.first.grid.dx());
  return SystemState(s.variant,
                     GridField(s.first.grid,
                               heat_solve_periodic(s.first.values, c)),
                     GridField(s.first.grid,
                               heat_solve_periodic(s.second.values, c)),
                     s.t);
}

RunRecord evolve(SystemState s, const FluxFunction& flux,
                 const SolverConfig& cfg,
                 const std::vector<NamedEntropy>& entropies, double eps) {
  RunRecord rec;
  const double dx = s.first.grid.dx();
  const bool vw = s.variant == Variant::VW;
  double linf_sum_sup = 0.0;

  auto log_row = [&](const SystemState& st) {
    if (vw)
      linf_sum_sup =
          std::max(linf_sum_sup, st.first.linf() + st.second.linf());
    std::vector<std::pair<std::string, double>> row;
    row.emplace_back("mass", integrate(st.second));
    row.emplace_back("mean_v", integrate(st.first));
    for (const auto& e : entropies) {
      double sum = 0.0;
      for (int i = 0; i < st.first.grid.n_cells; ++i)
        sum += e.value(st.first.values[i], st.second.values[i]);
      row.emplace_back("entropy_" + e.name, dx * sum);
    }
    row.emplace_back("linf_v", st.first.linf());
    row.emplace_back("linf_m", st.second.linf());
    if (vw) row.emplace_back("linf_sum", linf_sum_sup);
    rec.append(st.t, row);
  };

  log_row(s);
  long step = 0;
  while (s.t < cfg.t_end - 1e-14) {
    const double lam = std::max(max_wave_speed(s, flux), 1e-12);
    const double dt = std::min(cfg.cfl * dx / lam, cfg.t_end - s.t);
    try {
      SystemState next = lax_friedrichs_step(s, flux, dt);
      if (eps > 0.0) next = diffuse(next, eps, dt);
      s = std::move(next);
    } catch (const PositivityError&) {
      rec.blowup_time = s.t;
      break;
    } catch (const StabilityError&) {
      rec.blowup_time = s.t;
      break;
    }
    ++step;
    const bool last = s.t >= cfg.t_end - 1e-14;
    if (last || step % std::max(cfg.log_stride, 1) == 0) log_row(s);
    if (cfg.snapshot_stride > 0 && (last || step % cfg.snapshot_stride == 0))
      rec.snapshots.push_back(s);
  }
  rec.final_state = s;
  return rec;
}

}  // namespace

RunRecord solve_ff_vm(const GridField& v0, const GridField& m0,
                      const ModelSpec& model, const SolverConfig& cfg,
                      const std::vector<NamedEntropy>& entropies) {
  if (!model.coupling.increasing())
    throw HyperbolicityError("solve_ff_vm: decreasing coupling, system not hyperbolic");
  SystemState s(Variant::VM, v0, m0);
  return evolve(std::move(s), vm_flux(model), cfg, entropies, cfg.eps_art);
}

RunRecord solve_system3(const GridField& z0, const GridField& v0, double alpha,
                        const SolverConfig& cfg,
                        const std::vector<NamedEntropy>& entropies) {
  SystemState s(Variant::ZV, z0, v0);
  return evolve(std::move(s), system3_flux(alpha), cfg, entropies, cfg.eps_art);
}

RunRecord solve_psystem(const GridField& v0, const GridField& w0, double eps,
                        const SolverConfig& cfg,
                        const std::vector<NamedEntropy>& entropies) {
  if (eps < 0.0) throw DomainError("solve_psystem: eps must be >= 0");
  SystemState s(Variant::VW, v0, w0);
  return evolve(std::move(s), psystem_flux(), cfg, entropies, eps);
}

std::pair<GridField, GridField> wave_initial_data(const GridField& u0,
                                                  const GridField& m0,
                                                  const ModelSpec& model) {
  for (double m : m0.values)
    if (m <= 0.0) throw DomainError("wave_initial_data: m0 must be positive");
  GridField v0 = diff_periodic(u0);
  std::vector<double> w(u0.grid.n_cells);
  for (int i = 0; i < u0.grid.n_cells; ++i)
    w[i] = model.coupling.value(m0.values[i]) -
           model.hamiltonian.value(v0.values[i]);
  return {std::move(v0), GridField(u0.grid, std::move(w))};
}

double psystem_invariant_region_bound(const GridField& v0,
                                      const GridField& w0) {
  auto Lambda = [](double v) {
    return 0.5 * (v * std::sqrt(1.0 + v * v) + std::asinh(v));
  };
  double rp_max = -1e300, rm_min = 1e300;
  for (int i = 0; i < v0.grid.n_cells; ++i) {
    const double L = Lambda(v0.values[i]);
    rp_max = std::max(rp_max, w0.values[i] + L);
    rm_min = std::min(rm_min, w0.values[i] - L);
  }
  // Region: rm_min <= w - Lambda(v), w + Lambda(v) <= rp_max. Hence
  // Lambda(|v|) <= (rp_max - rm_min)/2 and |w| <= max(|rp_max|, |rm_min|).
  const double Lmax = 0.5 * (rp_max - rm_min);
  double lo = 0.0, hi = 1.0;
  while (Lambda(hi) < Lmax) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (Lambda(mid) < Lmax ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) + std::max(std::abs(rp_max), std::abs(rm_min));
}

}  // namespace mfglab
