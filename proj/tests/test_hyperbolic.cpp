#include <doctest.h>

#include <cmath>

#include "mfglab/hyperbolic.hpp"

using namespace mfglab;

namespace {

const ModelSpec kLogModel(HamiltonianSpec::quadratic(), CouplingSpec::log());

SystemState perturbed_vm(int n, double amp = 0.1) {
  PeriodicGrid g(n);
  auto v = GridField::constant(g, 0.0);
  auto m = GridField::sample(
      g, [amp](double x) { return 1.0 + amp * std::sin(2 * M_PI * x); });
  return SystemState(Variant::VM, v, m);
}

}  // namespace

TEST_CASE("flux definitions") {
  auto f = vm_flux(kLogModel);
  auto F = f.flux(0.5, 2.0);
  CHECK(F[0] == doctest::Approx(0.125 - std::log(2.0)));
  CHECK(F[1] == doctest::Approx(-1.0));
  CHECK(f.max_speed(0.5, 2.0) == doctest::Approx(std::sqrt(1.25)));

  auto p = psystem_flux();
  auto Fp = p.flux(1.0, -0.5);
  CHECK(Fp[0] == doctest::Approx(0.5));
  CHECK(Fp[1] == doctest::Approx(-(1.0 + 1.0 / 3.0)));
  CHECK(p.max_speed(1.0, 0.0) == doctest::Approx(std::sqrt(2.0)));

  const double a = 2.0;
  auto s3 = system3_flux(a);
  // z_t = ((1/3 + a/6 - a^2/2) v^3 + a v z)_x
  auto F3 = s3.flux(0.5, 1.0);  // (z, v) = (0.5, 1.0)
  const double c3 = 1.0 / 3 + a / 6 - a * a / 2;
  CHECK(F3[0] == doctest::Approx(-(c3 + a * 0.5)));
  CHECK(F3[1] == doctest::Approx(-(0.5 - 0.5 * a)));
}

TEST_CASE("one step: constant states are fixed points, mass telescopes") {
  PeriodicGrid g(64);
  SystemState s(Variant::VM, GridField::constant(g, 0.3),
                GridField::constant(g, 1.2));
  auto f = vm_flux(kLogModel);
  auto next = lax_friedrichs_step(s, f, 1e-3);
  for (int i = 0; i < 64; ++i) {
    CHECK(next.first.values[i] == doctest::Approx(0.3));
    CHECK(next.second.values[i] == doctest::Approx(1.2));
  }

  auto p = perturbed_vm(128);
  auto stepped = lax_friedrichs_step(p, f, 1e-3);
  CHECK(std::abs(integrate(stepped.second) - integrate(p.second)) <= 1e-14);
  CHECK(std::abs(integrate(stepped.first) - integrate(p.first)) <= 1e-14);
}

TEST_CASE("cfl guard") {
  auto p = perturbed_vm(64);
  CHECK_THROWS_AS(lax_friedrichs_step(p, vm_flux(kLogModel), 1.0), CflError);
}

TEST_CASE("self-convergence of the scheme is first order") {
  auto run = [&](int n) {
    auto s = perturbed_vm(n);
    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.log_stride = 1000000;
    return solve_ff_vm(s.first, s.second, kLogModel, cfg);
  };
  auto restrict_l1 = [](const GridField& coarse, const GridField& fine) {
    const int r = fine.grid.n_cells / coarse.grid.n_cells;
    double sum = 0.0;
    for (int i = 0; i < coarse.grid.n_cells; ++i) {
      double avg = 0.0;
      for (int k = 0; k < r; ++k) avg += fine.values[i * r + k];
      sum += std::abs(coarse.values[i] - avg / r);
    }
    return sum / coarse.grid.n_cells;
  };
  auto r64 = run(64), r128 = run(128), r256 = run(256), r4096 = run(4096);
  const auto& ref = r4096.final_state->second;
  const double e64 = restrict_l1(r64.final_state->second, ref);
  const double e128 = restrict_l1(r128.final_state->second, ref);
  const double e256 = restrict_l1(r256.final_state->second, ref);
  CHECK(e64 / e128 > 1.6);
  CHECK(e128 / e256 > 1.6);
}

TEST_CASE("vm solver: equilibrium is stationary") {
  PeriodicGrid g(64);
  SolverConfig cfg;
  cfg.t_end = 0.5;
  auto rec = solve_ff_vm(GridField::constant(g, 0.0), GridField::constant(g, 1.0),
                         kLogModel, cfg);
  CHECK(rec.final_state->first.linf() <= 1e-14);
  for (int i = 0; i < 64; ++i)
    CHECK(rec.final_state->second.values[i] == doctest::Approx(1.0));
  CHECK_FALSE(rec.blowup_time.has_value());
}

TEST_CASE("vm solver refuses non-hyperbolic couplings") {
  PeriodicGrid g(32);
  ModelSpec anti(HamiltonianSpec::quadratic(), CouplingSpec::signed_quadratic(-1));
  SolverConfig cfg;
  CHECK_THROWS_AS(solve_ff_vm(GridField::constant(g, 0.0),
                              GridField::constant(g, 1.0), anti, cfg),
                  HyperbolicityError);
}

TEST_CASE("vm solver conserves means and tracks entropy drift at first order") {
  auto drift = [&](int n) {
    auto s = perturbed_vm(n);
    SolverConfig cfg;
    cfg.t_end = 0.2;
    cfg.log_stride = 1000000;
    std::vector<NamedEntropy> es = {{"HP", [](double v, double m) {
                                       return 0.5 * v * v - std::log(m);
                                     }}};
    auto rec = solve_ff_vm(s.first, s.second, kLogModel, cfg, es);
    CHECK(std::abs(rec.last("mass") - rec.at("mass").front()) <= 1e-12);
    CHECK(std::abs(rec.last("mean_v") - rec.at("mean_v").front()) <= 1e-12);
    return std::abs(rec.last("entropy_HP") - rec.at("entropy_HP").front());
  };
  const double d256 = drift(256), d512 = drift(512), d1024 = drift(1024);
  CHECK(std::log2(d256 / d512) > 0.9);
  CHECK(std::log2(d512 / d1024) > 0.9);
}

TEST_CASE("small perturbations propagate at unit speed in the log model") {
  // Linearized wave speeds are +-sqrt(v^2 + 1) ~ +-1: after time t the
  // initial bump splits into signals near x0 +- t.
  const int n = 512;
  PeriodicGrid g(n);
  auto m0 = GridField::sample(g, [](double x) {
    return 1.0 + 0.05 * std::exp(-200.0 * (x - 0.5) * (x - 0.5));
  });
  SolverConfig cfg;
  cfg.t_end = 0.25;
  cfg.log_stride = 1000000;
  auto rec = solve_ff_vm(GridField::constant(g, 0.0), m0, kLogModel, cfg);
  const auto& m = rec.final_state->second;
  // Locate the two crests of m - 1.
  int left = 0, right = 0;
  for (int i = 0; i < n / 2; ++i)
    if (m.values[i] > m.values[left]) left = i;
  for (int i = n / 2; i < n; ++i)
    if (m.values[i] > m.values[right]) right = i;
  CHECK(g.center(left) == doctest::Approx(0.25).epsilon(0.15));
  CHECK(g.center(right) == doctest::Approx(0.75).epsilon(0.15));
}

TEST_CASE("system3: constant states are stationary; cubic entropy drifts at first order") {
  PeriodicGrid g(64);
  SolverConfig cfg;
  cfg.t_end = 0.3;
  auto rec = solve_system3(GridField::constant(g, 0.7),
                           GridField::constant(g, -0.2), 2.0, cfg);
  CHECK(rec.final_state->first.values[5] == doctest::Approx(0.7));
  CHECK(rec.final_state->second.values[9] == doctest::Approx(-0.2));

  const double alpha = 2.0;
  auto drift = [&](int n) {
    PeriodicGrid gr(n);
    // Asymmetric data: with symmetric profiles the cubic entropy vanishes
    // identically and the drift is rounding noise with no order to measure.
    auto z0 = GridField::sample(gr, [](double x) {
      return 1.0 + 0.1 * std::sin(2 * M_PI * x + 0.7);
    });
    auto v0 = GridField::sample(gr, [](double x) {
      return 0.3 + 0.1 * std::cos(2 * M_PI * x);
    });
    SolverConfig c;
    c.t_end = 0.1;
    c.log_stride = 1000000;
    std::vector<NamedEntropy> es = {{"vz3", [alpha](double z, double v) {
                                       return v * z - alpha / 3 * v * v * v;
                                     }}};
    auto r = solve_system3(z0, v0, alpha, c, es);
    CHECK(std::abs(r.last("mass") - r.at("mass").front()) <= 1e-12);
    CHECK(std::abs(r.last("mean_v") - r.at("mean_v").front()) <= 1e-12);
    return std::abs(r.last("entropy_vz3") - r.at("entropy_vz3").front());
  };
  const double d256 = drift(256), d1024 = drift(1024);
  CHECK(std::log2(d256 / d1024) / 2.0 > 0.9);
}

TEST_CASE("cross-formulation equivalence vm vs system3") {
  const double alpha = 2.0;
  ModelSpec model(HamiltonianSpec::quadratic(), CouplingSpec::power(alpha));
  auto discrepancy = [&](int n) {
    PeriodicGrid g(n);
    auto v0 = GridField::constant(g, 0.0);
    auto m0 = GridField::sample(g, [](double x) {
      return 1.0 + 0.1 * std::sin(2 * M_PI * x);
    });
    SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.log_stride = 1000000;
    auto rec_vm = solve_ff_vm(v0, m0, model, cfg);

    SystemState zv0 = change_variables(SystemState(Variant::VM, v0, m0),
                                       Variant::ZV, model);
    auto rec_zv = solve_system3(zv0.first, zv0.second, alpha, cfg);
    SystemState vm_back =
        change_variables(SystemState(Variant::ZV, rec_zv.final_state->first,
                                     rec_zv.final_state->second,
                                     rec_zv.final_state->t),
                         Variant::VM, model);
    return l1_distance(vm_back.second, rec_vm.final_state->second) +
           l1_distance(vm_back.first, rec_vm.final_state->first);
  };
  const double e256 = discrepancy(256), e512 = discrepancy(512),
               e1024 = discrepancy(1024);
  CHECK(std::log2(e256 / e512) > 0.9);
  CHECK(std::log2(e512 / e1024) > 0.9);
}

TEST_CASE("psystem: zero data stays zero; energy drifts down only") {
  PeriodicGrid g(64);
  SolverConfig cfg;
  cfg.t_end = 0.4;
  auto rec = solve_psystem(GridField::constant(g, 0.0),
                           GridField::constant(g, 0.0), 0.0, cfg);
  CHECK(rec.final_state->first.linf() == 0.0);
  CHECK(rec.final_state->second.linf() == 0.0);
  CHECK(rec.last("linf_sum") == 0.0);
}

TEST_CASE("viscous psystem respects the invariant-region bound") {
  PeriodicGrid g(256);
  auto v0 = GridField::sample(g, [](double x) {
    const double x1 = 0.25, x2 = 0.75, w = 0.05;
    return 0.5 * (std::tanh((x - x1) / w) - std::tanh((x - x2) / w)) - 0.5;
  });
  auto w0 = GridField::constant(g, 0.1);
  const double bound = psystem_invariant_region_bound(v0, w0);
  CHECK(bound >= v0.linf() + w0.linf());
  for (double eps : {1e-3, 1e-2}) {
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.log_stride = 10;
    auto rec = solve_psystem(v0, w0, eps, cfg);
    CHECK(rec.last("linf_sum") <= 1.01 * bound);
  }
}

TEST_CASE("periodic heat solve matches diffusion of a fourier mode") {
  // (I - c D2) x = rhs has exact eigenpairs on the ring.
  const int n = 64;
  const double c = 0.7;
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::cos(2 * M_PI * 3 * (i + 0.5) / n);
  auto x = heat_solve_periodic(rhs, c);
  const double eig = 1.0 + 4.0 * c * std::pow(std::sin(M_PI * 3 / n), 2);
  for (int i = 0; i < n; ++i)
    CHECK(x[i] == doctest::Approx(rhs[i] / eig).epsilon(1e-10));
  // Mean preservation.
  std::vector<double> ones(n, 1.0);
  for (double xi : heat_solve_periodic(ones, 2.5))
    CHECK(xi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wave initial data and m-recovery round trip") {
  PeriodicGrid g(128);
  auto u0 = GridField::sample(g, [](double x) {
    return 0.1 * std::cos(2 * M_PI * x) + 0.02 * std::sin(4 * M_PI * x);
  });
  auto m0 = GridField::sample(g, [](double x) {
    return 1.0 + 0.3 * std::sin(2 * M_PI * x + 0.4);
  });
  ModelSpec model(HamiltonianSpec::quadratic(), CouplingSpec::log());
  auto [v0, w0] = wave_initial_data(u0, m0, model);
  for (int i = 0; i < 128; ++i)
    CHECK(w0.values[i] ==
          doctest::Approx(std::log(m0.values[i]) -
                          0.5 * v0.values[i] * v0.values[i]));
  SystemState vm = change_variables(SystemState(Variant::VW, v0, w0),
                                    Variant::VM, model);
  for (int i = 0; i < 128; ++i)
    CHECK(vm.second.values[i] == doctest::Approx(m0.values[i]).epsilon(1e-12));

  CHECK_THROWS_AS(wave_initial_data(u0, GridField::constant(g, -1.0), model),
                  DomainError);

  // u0 = 0, m0 = 1: v0 = 0 and w0 = g(1) for any coupling.
  auto [vz, wz] = wave_initial_data(GridField::constant(g, 0.0),
                                    GridField::constant(g, 1.0),
                                    ModelSpec(HamiltonianSpec::quadratic(),
                                              CouplingSpec::power(2.0)));
  CHECK(vz.linf() == 0.0);
  for (int i = 0; i < 128; ++i) CHECK(wz.values[i] == doctest::Approx(1.0));
}

TEST_CASE("psystem agrees with a leapfrog wave solver for small data") {
  // Linearized regime: u_tt = sigma'(u_x) u_xx ~ u_xx for small u_x.
  const int n = 256;
  PeriodicGrid g(n);
  const double dx = g.dx();
  auto u0 = [](double x) { return 0.01 * std::cos(2 * M_PI * x); };
  auto v0 = GridField::sample(g, [&](double x) {
    return -0.02 * M_PI * std::sin(2 * M_PI * x);
  });
  auto w0 = GridField::constant(g, 0.0);  // u_t(.,0) = 0
  SolverConfig cfg;
  cfg.t_end = 0.2;
  cfg.log_stride = 1000000;
  auto rec = solve_psystem(v0, w0, 0.0, cfg);

  // Leapfrog for u_tt = (sigma(u_x))_x on a staggered-in-time grid.
  const double dt = 0.2 * dx;
  const int steps = static_cast<int>(std::round(0.2 / dt));
  std::vector<double> up(n), uc(n), un(n);
  for (int i = 0; i < n; ++i) {
    uc[i] = u0(g.center(i));
    up[i] = uc[i];  // zero initial velocity
  }
  auto accel = [&](const std::vector<double>& u, int i) {
    const int ip = (i + 1) % n, im = (i - 1 + n) % n;
    const double sx_r = stress_sigma((u[ip] - u[i]) / dx);
    const double sx_l = stress_sigma((u[i] - u[im]) / dx);
    return (sx_r - sx_l) / dx;
  };
  // First step from rest: u1 = u0 + dt^2/2 a(u0).
  for (int i = 0; i < n; ++i) un[i] = uc[i] + 0.5 * dt * dt * accel(uc, i);
  up = uc;
  uc = un;
  for (int s = 1; s < steps; ++s) {
    for (int i = 0; i < n; ++i)
      un[i] = 2.0 * uc[i] - up[i] + dt * dt * accel(uc, i);
    up.swap(uc);
    uc.swap(un);
  }
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n, im = (i - 1 + n) % n;
    const double ux = (uc[ip] - uc[im]) / (2 * dx);
    err += std::abs(ux - rec.final_state->first.values[i]);
  }
  CHECK(err * dx <= 20.0 * dx);  // first-order agreement
}
