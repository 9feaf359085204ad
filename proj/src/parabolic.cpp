#include "mfglab/parabolic.hpp"

#include <algorithm>
#include <cmath>

#include "mfglab/analysis.hpp"
#include "mfglab/hyperbolic.hpp"

namespace mfglab {

RunRecord solve_parabolic(const GridField& v0, const GridField& m0,
                          const ModelSpec& model, const ParabolicConfig& cfg) {
  if (!(model.epsilon > 0.0))
    throw DomainError("solve_parabolic: requires epsilon > 0");
  if (!model.coupling.increasing())
    throw DomainError("solve_parabolic: coupling must be increasing");
  const double eps = model.epsilon;

  // Project onto the invariant means: int v = 0, int m = 1.
  const double mass0 = integrate(m0);
  if (!(mass0 > 0.0)) throw DomainError("solve_parabolic: int m0 must be > 0");
  const double vbar = integrate(v0);
  std::vector<double> v(v0.values), m(m0.values);
  for (double& x : v) x -= vbar;
  for (double& x : m) x /= mass0;

  const PeriodicGrid grid = v0.grid;
  const int n = grid.n_cells;
  const double dx = grid.dx();
  const FluxFunction flux = vm_flux(model);
  const auto& H = model.hamiltonian;
  const auto& g = model.coupling;
  const double i_ref = H.value(0.0) + g.potential(1.0);

  RunRecord rec;
  double t = 0.0;
  auto log_row = [&]() {
    SystemState st(Variant::VM, GridField(grid, v), GridField(grid, m), t);
    const GridField vx = diff_periodic(st.first);
    const GridField mx = diff_periodic(st.second);
    double I = 0, D = 0, l1v = 0, l1m = 0;
    for (int i = 0; i < n; ++i) {
      I += H.value(v[i]) + g.potential(m[i]);
      D += H.d2(v[i]) * vx.values[i] * vx.values[i] +
           g.potential_d2(m[i]) * mx.values[i] * mx.values[i];
      l1v += std::abs(v[i]);
      l1m += std::abs(m[i] - 1.0);
    }
    rec.append(t, {{"mass", integrate(st.second)},
                   {"mean_v", integrate(st.first)},
                   {"I", dx * I - i_ref},
                   {"D", eps * dx * D},
                   {"l1_v", dx * l1v},
                   {"l1_m", dx * l1m},
                   {"min_v", st.first.min()},
                   {"max_v", st.first.max()},
                   {"min_m", st.second.min()},
                   {"max_m", st.second.max()}});
    if (cfg.snapshot_stride > 0) rec.snapshots.push_back(st);
    rec.final_state = std::move(st);
  };

  log_row();
  long step = 0;
  std::vector<double> vn(n), mn(n), a(n);
  std::vector<std::array<double, 2>> F(n);
  while (t < cfg.t_end - 1e-14) {
    double lam = 1e-12;
    for (int i = 0; i < n; ++i) {
      F[i] = flux.flux(v[i], m[i]);
      a[i] = flux.max_speed(v[i], m[i]);
      lam = std::max(lam, a[i]);
    }
    const double dt = std::min({cfg.cfl * dx / lam,
                                cfg.diff_safety * dx * dx / eps,
                                cfg.t_end - t});
    if (dt < 1e-14)
      throw StabilityError("solve_parabolic: step size underflow");
    const double nu = eps * dt / (dx * dx);
    for (int i = 0; i < n; ++i) {
      const int ip = grid.wrap(i + 1), im = grid.wrap(i - 1);
      const double ar = std::max(a[i], a[ip]), al = std::max(a[im], a[i]);
      const double fr_v = 0.5 * (F[i][0] + F[ip][0]) - 0.5 * ar * (v[ip] - v[i]);
      const double fl_v = 0.5 * (F[im][0] + F[i][0]) - 0.5 * al * (v[i] - v[im]);
      const double fr_m = 0.5 * (F[i][1] + F[ip][1]) - 0.5 * ar * (m[ip] - m[i]);
      const double fl_m = 0.5 * (F[im][1] + F[i][1]) - 0.5 * al * (m[i] - m[im]);
      vn[i] = v[i] - dt / dx * (fr_v - fl_v) + nu * (v[ip] - 2.0 * v[i] + v[im]);
      mn[i] = m[i] - dt / dx * (fr_m - fl_m) + nu * (m[ip] - 2.0 * m[i] + m[im]);
      if (!std::isfinite(vn[i]) || !std::isfinite(mn[i]))
        throw StabilityError("solve_parabolic: non-finite state");
    }
    v.swap(vn);
    m.swap(mn);
    t += dt;
    ++step;
    const bool last = t >= cfg.t_end - 1e-14;
    if (last || step % std::max(cfg.log_stride, 1) == 0) log_row();
  }
  return rec;
}

double dissipation_rate(const SystemState& s, const EntropyFn& E,
                        const ModelSpec& model) {
  const GridField vx = diff_periodic(s.first);
  const GridField mx = diff_periodic(s.second);
  double sum = 0.0;
  for (int i = 0; i < s.first.grid.n_cells; ++i) {
    const double a = s.first.values[i], b = s.second.values[i];
    sum += E.d11(a, b) * vx.values[i] * vx.values[i] +
           2.0 * E.d12(a, b) * vx.values[i] * mx.values[i] +
           E.d22(a, b) * mx.values[i] * mx.values[i];
  }
  return model.epsilon * s.first.grid.dx() * sum;
}

DecayReport monotone_decay_check(const RunRecord& rec, const ModelSpec& model) {
  DecayReport rep;
  const auto& t = rec.times;
  const auto& I = rec.at("I");
  for (size_t k = 1; k < I.size(); ++k)
    if (I[k] > I[k - 1] + 1e-10) {
      rep.monotone = false;
      rep.violations.push_back("I increased at t = " + std::to_string(t[k]));
    }

  const auto& min_v = rec.at("min_v");
  const auto& max_v = rec.at("max_v");
  const auto& min_m = rec.at("min_m");
  const auto& max_m = rec.at("max_m");
  const double av = *std::min_element(min_v.begin(), min_v.end());
  const double bv = *std::max_element(max_v.begin(), max_v.end());
  const double am = *std::min_element(min_m.begin(), min_m.end());
  const double bm = *std::max_element(max_m.begin(), max_m.end());
  const double ch =
      poincare_constant(ConvexProfile::from_hamiltonian(model.hamiltonian), av, bv);
  const double cp =
      poincare_constant(ConvexProfile::from_potential(model.coupling), am, bm);
  rep.c0 = std::max(ch, cp);

  if (I[0] <= 1e-14) {
    // Equilibrium start: the bound is trivial; require I to stay at zero.
    for (double val : I)
      if (val > 1e-12) {
        rep.exponential = false;
        rep.violations.push_back("I left zero on an equilibrium run");
        break;
      }
    return rep;
  }
  const double tol = 0.05;
  for (size_t k = 0; k < I.size(); ++k) {
    const double bound = std::exp(-model.epsilon * t[k] / rep.c0) * I[0];
    rep.worst_ratio = std::max(rep.worst_ratio, I[k] / bound);
    if (I[k] > bound * (1.0 + tol)) {
      rep.exponential = false;
      rep.violations.push_back("I above the exponential bound at t = " +
                               std::to_string(t[k]));
    }
  }
  return rep;
}

}  // namespace mfglab
