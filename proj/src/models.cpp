#include "mfglab/models.hpp"

#include <algorithm>
#include <cmath>

namespace mfglab {

HamiltonianSpec HamiltonianSpec::power_abs(double g) {
  if (g <= 1.0) throw DomainError("PowerAbs requires gamma > 1");
  return {Kind::PowerAbs, g};
}

HamiltonianSpec HamiltonianSpec::power_sqrt(double g) {
  if (g <= 1.0) throw DomainError("PowerSqrt requires gamma > 1");
  return {Kind::PowerSqrt, g};
}

double HamiltonianSpec::value(double p) const {
  switch (kind) {
    case Kind::Quadratic: return 0.5 * p * p;
    case Kind::PowerAbs: return std::pow(std::abs(p), gamma) / gamma;
    case Kind::PowerSqrt: return std::pow(1.0 + p * p, 0.5 * gamma);
  }
  return 0.0;
}

double HamiltonianSpec::d1(double p) const {
  switch (kind) {
    case Kind::Quadratic: return p;
    case Kind::PowerAbs:
      if (p == 0.0) return 0.0;
      return (p > 0 ? 1.0 : -1.0) * std::pow(std::abs(p), gamma - 1.0);
    case Kind::PowerSqrt:
      return gamma * p * std::pow(1.0 + p * p, 0.5 * gamma - 1.0);
  }
  return 0.0;
}

double HamiltonianSpec::d2(double p) const {
  switch (kind) {
    case Kind::Quadratic: return 1.0;
    case Kind::PowerAbs:
      if (p == 0.0)
        throw DomainError("PowerAbs H'' is not defined at p = 0");
      return (gamma - 1.0) * std::pow(std::abs(p), gamma - 2.0);
    case Kind::PowerSqrt: {
      double q = 1.0 + p * p;
      return gamma * std::pow(q, 0.5 * gamma - 2.0) * (1.0 + (gamma - 1.0) * p * p);
    }
  }
  return 0.0;
}

CouplingSpec CouplingSpec::power(double a) {
  if (a <= 0.0) throw DomainError("Power coupling requires alpha > 0");
  return {Kind::Power, a, +1};
}

CouplingSpec CouplingSpec::signed_quadratic(int s) {
  if (s != 1 && s != -1) throw DomainError("SignedQuadratic sign must be +-1");
  return {Kind::SignedQuadratic, 2.0, s};
}

static void require_positive(double m, const char* who) {
  if (!(m > 0.0)) throw DomainError(std::string(who) + ": requires m > 0");
}

double CouplingSpec::value(double m) const {
  require_positive(m, "CouplingSpec::value");
  switch (kind) {
    case Kind::Power: return std::pow(m, alpha);
    case Kind::Log: return std::log(m);
    case Kind::SignedQuadratic: return sign * 0.5 * m * m;
  }
  return 0.0;
}

double CouplingSpec::d1(double m) const {
  require_positive(m, "CouplingSpec::d1");
  switch (kind) {
    case Kind::Power: return alpha * std::pow(m, alpha - 1.0);
    case Kind::Log: return 1.0 / m;
    case Kind::SignedQuadratic: return sign * m;
  }
  return 0.0;
}

double CouplingSpec::inverse(double y) const {
  switch (kind) {
    case Kind::Power:
      if (!(y > 0.0)) throw RangeError("g^{-1}: m^alpha takes only positive values");
      return std::pow(y, 1.0 / alpha);
    case Kind::Log:
      return std::exp(y);
    case Kind::SignedQuadratic:
      if (!(sign * y > 0.0))
        throw RangeError("g^{-1}: s*m^2/2 takes only values with sign s");
      return std::sqrt(2.0 * sign * y);
  }
  return 0.0;
}

bool CouplingSpec::increasing() const {
  return kind != Kind::SignedQuadratic || sign > 0;
}

double CouplingSpec::potential(double m) const {
  require_positive(m, "CouplingSpec::potential");
  switch (kind) {
    case Kind::Power:
      if (alpha == 1.0) return m * std::log(m) - m;
      return std::pow(m, alpha) / (alpha - 1.0);
    case Kind::Log: return -std::log(m);
    case Kind::SignedQuadratic: return sign * 0.5 * m * m;
  }
  return 0.0;
}

double CouplingSpec::potential_d1(double m) const {
  require_positive(m, "CouplingSpec::potential_d1");
  switch (kind) {
    case Kind::Power:
      if (alpha == 1.0) return std::log(m);
      return alpha / (alpha - 1.0) * std::pow(m, alpha - 1.0);
    case Kind::Log: return -1.0 / m;
    case Kind::SignedQuadratic: return sign * m;
  }
  return 0.0;
}

double CouplingSpec::potential_d2(double m) const {
  return d1(m) / m;
}

double potential_P(const CouplingSpec& g, double m) { return g.potential(m); }

double phi(double v, double w, const ModelSpec& model) {
  const auto& H = model.hamiltonian;
  const auto& g = model.coupling;
  double m = g.inverse(w + H.value(v));
  double hp = H.d1(v);
  return hp * hp + m * g.d1(m) * H.d2(v);
}

double stress_sigma(double z) { return z + z * z * z / 3.0; }
double stress_sigma_d1(double z) { return 1.0 + z * z; }

double G_of_p(double p) {
  double a = std::abs(p);
  return 0.5 * (a * std::sqrt(1.0 + a * a) + std::asinh(a));
}

double G_prime(double p) {
  if (p == 0.0) return 0.0;  // subdifferential [-1,1]; midpoint by convention
  return (p > 0 ? 1.0 : -1.0) * std::sqrt(1.0 + p * p);
}

double G_conjugate(double v) {
  double a = std::abs(v);
  if (a <= 1.0) return 0.0;
  return 0.5 * (a * std::sqrt(a * a - 1.0) - std::acosh(a));
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {  // <= keeps ties toward the smaller end
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double legendre(const std::function<double(double)>& f, double v, double p_max) {
  if (!(p_max > 0.0)) throw DomainError("legendre: p_max must be positive");
  auto neg = [&](double p) { return f(p) - p * v; };  // minimize -(pv - f)
  const int n_scan = 512;
  double best = 0.0, best_val = neg(0.0);
  for (int i = 0; i <= n_scan; ++i) {
    double p = -p_max + 2.0 * p_max * i / n_scan;
    double val = neg(p);
    if (val < best_val) { best_val = val; best = p; }
  }
  double h = 2.0 * p_max / n_scan;
  if (std::abs(best) >= p_max - 0.5 * h)
    throw WindowError("legendre: maximizer at scan boundary, enlarge p_max");
  double lo = std::max(best - h, -p_max), hi = std::min(best + h, p_max);
  double p_star = golden_min(neg, lo, hi, 1e-12 * std::max(1.0, p_max));
  return std::max(-neg(p_star), -best_val);
}

}  // namespace mfglab
