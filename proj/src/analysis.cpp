#include "mfglab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double s) { return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0); }

// Composite Simpson from base to s; for profiles without closed-form Psi.
std::function<double(double)> quadrature_psi(
    std::function<double(double)> phi_d2, double base) {
  return [phi_d2 = std::move(phi_d2), base](double s) {
    const int panels = 512;
    const double h = (s - base) / (2 * panels);
    if (h == 0.0) return 0.0;
    auto g = [&](double x) { return std::sqrt(phi_d2(x)); };
    double sum = g(base) + g(s);
    for (int i = 1; i < 2 * panels; ++i)
      sum += (i % 2 ? 4.0 : 2.0) * g(base + i * h);
    return sum * h / 3.0;
  };
}

}  // namespace

ConvexProfile ConvexProfile::power(double p) {
  if (!(p > 1.0 || p < 0.0))
    throw DomainError("ConvexProfile::power requires p > 1 or p < 0");
  const double c = std::sqrt(p * (p - 1.0));
  return {"s^" + std::to_string(p), 0.0, kInf,
          [p](double s) { return std::pow(s, p); },
          [p](double s) { return p * std::pow(s, p - 1.0); },
          [p, c](double s) { return c * c * std::pow(s, p - 2.0); },
          [p, c](double s) { return 2.0 * c / p * std::pow(s, 0.5 * p); }};
}

ConvexProfile ConvexProfile::neg_power(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("ConvexProfile::neg_power requires 0 < p < 1");
  const double c = std::sqrt(p * (1.0 - p));
  return {"-s^" + std::to_string(p), 0.0, kInf,
          [p](double s) { return -std::pow(s, p); },
          [p](double s) { return -p * std::pow(s, p - 1.0); },
          [p, c](double s) { return c * c * std::pow(s, p - 2.0); },
          [p, c](double s) { return 2.0 * c / p * std::pow(s, 0.5 * p); }};
}

ConvexProfile ConvexProfile::neg_log() {
  return {"-ln s", 0.0, kInf,
          [](double s) { return -std::log(s); },
          [](double s) { return -1.0 / s; },
          [](double s) { return 1.0 / (s * s); },
          [](double s) { return std::log(s); }};
}

ConvexProfile ConvexProfile::s_log_s() {
  return {"s ln s", 0.0, kInf,
          [](double s) { return s * std::log(s); },
          [](double s) { return std::log(s) + 1.0; },
          [](double s) { return 1.0 / s; },
          [](double s) { return 2.0 * std::sqrt(s); }};
}

ConvexProfile ConvexProfile::even_power(int n) {
  if (n < 1) throw DomainError("ConvexProfile::even_power requires n >= 1");
  const double c = std::sqrt(2.0 * n * (2.0 * n - 1.0));
  return {"s^" + std::to_string(2 * n), -kInf, kInf,
          [n](double s) { return std::pow(s, 2 * n); },
          [n](double s) { return 2.0 * n * std::pow(s, 2 * n - 1); },
          [n, c](double s) { return c * c * std::pow(s, 2 * n - 2); },
          [n, c](double s) {
            return c / n * sgn(s) * std::pow(std::abs(s), n);
          }};
}

ConvexProfile ConvexProfile::exponential(double a) {
  if (a == 0.0) throw DomainError("ConvexProfile::exponential requires a != 0");
  return {"e^(" + std::to_string(a) + " s)", -kInf, kInf,
          [a](double s) { return std::exp(a * s); },
          [a](double s) { return a * std::exp(a * s); },
          [a](double s) { return a * a * std::exp(a * s); },
          [a](double s) { return 2.0 * sgn(a) * std::exp(0.5 * a * s); }};
}

ConvexProfile ConvexProfile::numeric(std::string name, double lo, double hi,
                                     std::function<double(double)> phi,
                                     std::function<double(double)> phi_d1,
                                     std::function<double(double)> phi_d2,
                                     double psi_base) {
  ConvexProfile p{std::move(name), lo, hi, std::move(phi), std::move(phi_d1),
                  std::move(phi_d2), nullptr};
  p.psi = quadrature_psi(p.phi_d2, psi_base);
  return p;
}

ConvexProfile ConvexProfile::from_hamiltonian(const HamiltonianSpec& h) {
  switch (h.kind) {
    case HamiltonianSpec::Kind::Quadratic:
      return {"H quadratic", -kInf, kInf,
              [](double s) { return 0.5 * s * s; },
              [](double s) { return s; },
              [](double) { return 1.0; },
              [](double s) { return s; }};
    case HamiltonianSpec::Kind::PowerAbs: {
      const double g = h.gamma, c = std::sqrt(g - 1.0);
      return {"H power", -kInf, kInf,
              [g](double s) { return std::pow(std::abs(s), g) / g; },
              [g](double s) {
                return s == 0.0 ? 0.0 : sgn(s) * std::pow(std::abs(s), g - 1.0);
              },
              [g](double s) {
                if (s == 0.0) return g == 2.0 ? 1.0 : (g > 2.0 ? 0.0 : kInf);
                return (g - 1.0) * std::pow(std::abs(s), g - 2.0);
              },
              [g, c](double s) {
                return 2.0 * c / g * sgn(s) * std::pow(std::abs(s), 0.5 * g);
              }};
    }
    case HamiltonianSpec::Kind::PowerSqrt:
      return numeric(
          "H power-sqrt", -kInf, kInf,
          [h](double s) { return h.value(s); },
          [h](double s) { return h.d1(s); },
          [h](double s) { return h.d2(s); }, 0.0);
  }
  throw DomainError("from_hamiltonian: unknown kind");
}

ConvexProfile ConvexProfile::from_potential(const CouplingSpec& g) {
  if (!g.increasing())
    throw DomainError("from_potential: coupling must be increasing for a convex P");
  std::function<double(double)> psi;
  switch (g.kind) {
    case CouplingSpec::Kind::Power:
      if (g.alpha == 1.0)
        psi = [](double s) { return 2.0 * std::sqrt(s); };
      else {
        const double a = g.alpha;
        psi = [a](double s) {
          return 2.0 / std::sqrt(a) * std::pow(s, 0.5 * a);
        };
      }
      break;
    case CouplingSpec::Kind::Log:
      psi = [](double s) { return std::log(s); };
      break;
    case CouplingSpec::Kind::SignedQuadratic:
      psi = [](double s) { return s; };
      break;
  }
  return {"P", 0.0, kInf,
          [g](double s) { return g.potential(s); },
          [g](double s) { return g.potential_d1(s); },
          [g](double s) { return g.potential_d2(s); }, std::move(psi)};
}

std::vector<ConvexProfile> profile_catalog() {
  return {ConvexProfile::power(3.0),     ConvexProfile::power(-1.0),
          ConvexProfile::neg_power(0.5), ConvexProfile::neg_log(),
          ConvexProfile::s_log_s(),      ConvexProfile::even_power(2),
          ConvexProfile::exponential(1.0)};
}

double poincare_constant(const ConvexProfile& profile, double a, double b) {
  if (a > b) std::swap(a, b);
  if (!profile.contains(a) || !profile.contains(b))
    throw DomainError("poincare_constant: endpoint outside the profile domain");
  // Coincident-endpoint convention: the a -> b Taylor limit is 1/4 for
  // every smooth strictly convex profile.
  if (b - a <= 1e-6 * (1.0 + std::abs(a) + std::abs(b))) return 0.25;
  const double num =
      profile.phi(a) + profile.phi(b) - 2.0 * profile.phi(0.5 * (a + b));
  const double den = profile.psi(b) - profile.psi(a);
  return num / (den * den);
}

PoincareSup poincare_sup(const ConvexProfile& profile) {
  std::vector<double> pts;
  if (profile.lo == 0.0) {
    for (double k = -6.0; k <= 6.0 + 1e-9; k += 0.25)
      pts.push_back(std::pow(10.0, k));
  } else {
    pts.push_back(0.0);
    for (double k = -6.0; k <= 2.5 + 1e-9; k += 0.25) {
      pts.push_back(std::pow(10.0, k));
      pts.push_back(-std::pow(10.0, k));
    }
    std::sort(pts.begin(), pts.end());
  }
  const int n = static_cast<int>(pts.size());
  const int margin = (n + 19) / 20;  // outer 5% on each end
  PoincareSup rep;
  // j = i contributes the coincident-endpoint limit 1/4, which is the
  // supremum for profiles whose quotient increases as b -> a.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double c;
      try {
        c = poincare_constant(profile, pts[i], pts[j]);
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(c)) continue;
      rep.value = std::max(rep.value, c);
      if (i >= margin && j < n - margin)
        rep.inner_max = std::max(rep.inner_max, c);
    }
  rep.plateau = rep.value <= 1.01 * rep.inner_max;
  return rep;
}

double poincare_check(const GridField& f, const ConvexProfile& profile) {
  const double a = f.min(), b = f.max();
  if (!profile.contains(a) || !profile.contains(b))
    throw DomainError("poincare_check: field leaves the profile domain");
  const double C = poincare_constant(profile, a, b);
  const GridField fp = diff_periodic(f);
  double lhs_int = 0.0, rhs_int = 0.0;
  for (int i = 0; i < f.grid.n_cells; ++i) {
    lhs_int += profile.phi(f.values[i]);
    rhs_int += profile.phi_d2(f.values[i]) * fp.values[i] * fp.values[i];
  }
  const double dx = f.grid.dx();
  const double lhs = dx * lhs_int - profile.phi(integrate(f));
  return C * dx * rhs_int - lhs;
}

std::pair<double, JensenDecomposition> jensen_gap(
    const GridField& f, const ConvexProfile& profile) {
  const double a = f.min(), b = f.max();
  if (!profile.contains(a) || !profile.contains(b))
    throw DomainError("jensen_gap: field leaves the profile domain");
  JensenDecomposition d;
  d.A = integrate(f);
  const int n = f.grid.n_cells;
  double sum_lo = 0.0, sum_hi = 0.0;
  int n_lo = 0;
  double gamma_int = 0.0;
  for (double s : f.values) {
    if (s < d.A) {
      sum_lo += s;
      ++n_lo;
    } else {
      sum_hi += s;
    }
    gamma_int += std::abs(s - d.A);
  }
  d.p = static_cast<double>(n_lo) / n;
  d.q = 1.0 - d.p;
  d.A1 = n_lo > 0 ? sum_lo / n_lo : d.A;
  d.A2 = n_lo < n ? sum_hi / (n - n_lo) : d.A;
  d.gamma = 0.5 * gamma_int / n;

  double phi_int = 0.0;
  for (double s : f.values) phi_int += profile.phi(s);
  const double gap = phi_int / n - profile.phi(d.A);
  const double middle = d.p * profile.phi(d.A1) + d.q * profile.phi(d.A2) -
                        profile.phi(d.A);
  if (gap < middle - 1e-10 || middle < -1e-10)
    throw RangeError("jensen_gap: inequality chain violated");
  return {gap, d};
}

DecayFit decay_fit(const std::vector<double>& times,
                   const std::vector<double>& I) {
  if (times.size() != I.size())
    throw DomainError("decay_fit: length mismatch");
  if (I.empty() || !(I[0] > 0.0))
    throw FitError("decay_fit: I(0) must be positive");
  std::vector<double> t, y;
  for (size_t k = 0; k < I.size(); ++k)
    if (I[k] > 1e-12 * I[0]) {
      t.push_back(times[k]);
      y.push_back(std::log(I[k]));
    }
  if (t.size() < 10) throw FitError("decay_fit: fewer than 10 usable points");
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (size_t k = 0; k < t.size(); ++k) {
    st += t[k];
    sy += y[k];
    stt += t[k] * t[k];
    sty += t[k] * y[k];
  }
  const double denom = n * stt - st * st;
  if (denom <= 0.0) throw FitError("decay_fit: degenerate time window");
  DecayFit fit;
  fit.rate = (n * sty - st * sy) / denom;
  const double c = (sy - fit.rate * st) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (size_t k = 0; k < t.size(); ++k) {
    const double r = y[k] - (c + fit.rate * t[k]);
    ss_res += r * r;
    ss_tot += (y[k] - ybar) * (y[k] - ybar);
  }
  fit.r2 = ss_tot <= 1e-24 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace mfglab
