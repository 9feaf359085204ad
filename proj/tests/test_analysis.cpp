#include <doctest.h>

#include <cmath>

#include "mfglab/analysis.hpp"

using namespace mfglab;

TEST_CASE("profile catalog is strictly convex with consistent psi") {
  for (const auto& p : profile_catalog()) {
    const bool positive = p.lo == 0.0;
    const std::vector<double> pts =
        positive ? std::vector<double>{0.3, 0.9, 1.7, 3.1}
                 : std::vector<double>{-1.8, -0.4, 0.6, 2.1};
    const double h = 1e-6;
    for (double s : pts) {
      CHECK(p.phi_d2(s) > 0.0);
      // Psi' = sqrt(Phi'') validates each closed form.
      const double psi_d = (p.psi(s + h) - p.psi(s - h)) / (2 * h);
      CHECK(psi_d == doctest::Approx(std::sqrt(p.phi_d2(s))).epsilon(1e-5));
      const double phi_d = (p.phi(s + h) - p.phi(s - h)) / (2 * h);
      CHECK(phi_d == doctest::Approx(p.phi_d1(s)).epsilon(1e-5));
    }
  }
}

TEST_CASE("poincare constant closed forms") {
  auto s2 = ConvexProfile::even_power(1);
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {-1.0, 2.0}, {0.1, 0.2}, {-5.0, -1.0}})
    CHECK(poincare_constant(s2, a, b) == doctest::Approx(0.25).epsilon(1e-12));

  // Phi = -ln s at (1,4): ln(25/16) / (ln 4)^2.
  auto nl = ConvexProfile::neg_log();
  CHECK(poincare_constant(nl, 1.0, 4.0) ==
        doctest::Approx(std::log(25.0 / 16.0) /
                        (std::log(4.0) * std::log(4.0))));
  // Symmetry under endpoint relabeling.
  CHECK(poincare_constant(nl, 4.0, 1.0) ==
        doctest::Approx(poincare_constant(nl, 1.0, 4.0)));

  // Exponential profile: C(a,b) = 1/4 for every pair.
  auto ex = ConvexProfile::exponential(1.0);
  CHECK(poincare_constant(ex, 0.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(poincare_constant(ex, -1.0, 3.0) ==
        doctest::Approx(0.25).epsilon(1e-12));

  // Coincident-endpoint convention: the expansion limit 1/4.
  for (const auto& p : profile_catalog()) {
    const double a = p.lo == 0.0 ? 1.3 : -0.7;
    CHECK(poincare_constant(p, a, a) == doctest::Approx(0.25));
    CHECK(poincare_constant(p, a, a + 1e-4) ==
          doctest::Approx(0.25).epsilon(1e-3));
  }
  CHECK_THROWS_AS(poincare_constant(nl, -1.0, 2.0), DomainError);
}

TEST_CASE("poincare sup plateaus on every catalog profile") {
  auto s2 = ConvexProfile::even_power(1);
  auto sup2 = poincare_sup(s2);
  CHECK(sup2.value == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(sup2.plateau);
  for (const auto& p : profile_catalog()) {
    auto sup = poincare_sup(p);
    CHECK(sup.value > 0.0);
    CHECK(std::isfinite(sup.value));
    CHECK(sup.plateau);
  }
  // The exponential profile's quotient is identically 1/4; the lattice
  // estimate carries rounding noise from near-coincident endpoints.
  auto es = poincare_sup(ConvexProfile::exponential(1.0));
  CHECK(es.value == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("poincare check on the worked sine example") {
  PeriodicGrid g(512);
  auto f = GridField::sample(
      g, [](double x) { return 1.0 + 0.3 * std::sin(2 * M_PI * x); });
  auto s2 = ConvexProfile::even_power(1);
  const double margin = poincare_check(f, s2);
  // LHS = int (f-1)^2 = 0.045; RHS = (1/4) int 2 f'^2 = (0.6 pi)^2 / 2.
  const double lhs = 0.045, rhs = 0.25 * 2.0 * 0.5 * std::pow(0.6 * M_PI, 2);
  CHECK(margin == doctest::Approx(rhs - lhs).epsilon(1e-3));
  CHECK(margin > 0.0);

  CHECK(poincare_check(GridField::constant(g, 2.0), s2) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(
      poincare_check(GridField::constant(g, -1.0), ConvexProfile::neg_log()),
      DomainError);
}

TEST_CASE("jensen gap worked example and decomposition invariants") {
  PeriodicGrid g(4096);
  auto f = GridField::sample(
      g, [](double x) { return 1.0 + 0.5 * std::sin(2 * M_PI * x); });
  auto s2 = ConvexProfile::even_power(1);
  auto [gap, d] = jensen_gap(f, s2);
  CHECK(gap == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(d.A == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.p == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(d.q == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(d.gamma == doctest::Approx(0.5 / M_PI).epsilon(1e-4));
  // Middle term p Phi(A1) + q Phi(A2) - Phi(A) = 1/pi^2 <= gap.
  const double middle =
      d.p * s2.phi(d.A1) + d.q * s2.phi(d.A2) - s2.phi(d.A);
  CHECK(middle == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-4));
  CHECK(gap >= middle);
  // Invariants of the two-mean split.
  CHECK(d.p + d.q == doctest::Approx(1.0));
  CHECK(d.p * d.A1 + d.q * d.A2 == doctest::Approx(d.A).epsilon(1e-10));
  CHECK(d.p * (d.A - d.A1) == doctest::Approx(d.gamma).epsilon(1e-10));

  // Constant field: gap and gamma vanish.
  auto [gap0, d0] = jensen_gap(GridField::constant(g, 1.5), s2);
  CHECK(gap0 == doctest::Approx(0.0));
  CHECK(d0.gamma == doctest::Approx(0.0));
}

TEST_CASE("gamma equals half the l1 deviation from the mean") {
  PeriodicGrid g(1000);
  auto f = GridField::sample(g, [](double x) {
    return 2.0 + 0.4 * std::sin(2 * M_PI * x) + 0.2 * std::cos(6 * M_PI * x);
  });
  auto [gap, d] = jensen_gap(f, ConvexProfile::s_log_s());
  double half_l1 = 0.0;
  const double A = integrate(f);
  for (double s : f.values) half_l1 += std::abs(s - A);
  half_l1 *= 0.5 * g.dx();
  CHECK(d.gamma == doctest::Approx(half_l1).epsilon(1e-12));
  CHECK(gap >= 0.0);
}

TEST_CASE("decay fit") {
  std::vector<double> t, exact, noisy, flat;
  for (int k = 0; k <= 100; ++k) {
    const double tk = 0.05 * k;
    t.push_back(tk);
    exact.push_back(std::exp(-3.0 * tk));
    noisy.push_back(std::exp(-3.0 * tk) * (1.0 + 0.01 * std::sin(tk)));
    flat.push_back(2.0);
  }
  auto fit = decay_fit(t, exact);
  CHECK(fit.rate == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-9));
  auto nfit = decay_fit(t, noisy);
  CHECK(nfit.rate == doctest::Approx(-3.0).epsilon(0.02 / 3.0));
  auto ffit = decay_fit(t, flat);
  CHECK(std::abs(ffit.rate) <= 1e-12);

  CHECK_THROWS_AS(decay_fit({0, 1, 2}, {1.0, 0.5, 0.2}), FitError);
  // Window collapses once values fall below the positivity floor.
  std::vector<double> ts, is;
  for (int k = 0; k < 20; ++k) {
    ts.push_back(k);
    is.push_back(k < 5 ? 1.0 / (k + 1) : 1e-18);
  }
  CHECK_THROWS_AS(decay_fit(ts, is), FitError);
}
