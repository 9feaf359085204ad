#pragma once

#include <functional>

#include "mfglab/errors.hpp"

namespace mfglab {

/// Strictly convex Hamiltonian H(p) with first and second derivatives.
///
/// PowerAbs has a degenerate/singular second derivative at p = 0; callers
/// that need H'' on a grid containing p = 0 must use Quadratic or PowerSqrt.
struct HamiltonianSpec {
  enum class Kind { Quadratic, PowerAbs, PowerSqrt };

  Kind kind = Kind::Quadratic;
  double gamma = 2.0;  // only PowerAbs / PowerSqrt

  static HamiltonianSpec quadratic() { return {Kind::Quadratic, 2.0}; }
  static HamiltonianSpec power_abs(double g);
  static HamiltonianSpec power_sqrt(double g);

  double value(double p) const;
  double d1(double p) const;
  double d2(double p) const;
};

/// Coupling g(m) on m > 0 with derivative, inverse, and derived potential P,
/// where P''(m) = g'(m)/m.
struct CouplingSpec {
  enum class Kind { Power, Log, SignedQuadratic };

  Kind kind = Kind::Log;
  double alpha = 1.0;  // Power exponent
  int sign = +1;       // SignedQuadratic: g(m) = sign * m^2/2

  static CouplingSpec power(double a);
  static CouplingSpec log() { return {Kind::Log, 1.0, +1}; }
  static CouplingSpec signed_quadratic(int s);

  double value(double m) const;
  double d1(double m) const;
  double inverse(double y) const;  // throws RangeError outside range of g
  bool increasing() const;

  /// Closed-form P with canonical constants: Power(a!=1): m^a/(a-1);
  /// Power(1): m ln m - m; Log: -ln m; SignedQuadratic(s): s m^2/2.
  double potential(double m) const;
  double potential_d1(double m) const;
  double potential_d2(double m) const;
};

struct ModelSpec {
  HamiltonianSpec hamiltonian;
  CouplingSpec coupling;
  double epsilon = 0.0;  // Fokker-Planck viscosity

  ModelSpec(HamiltonianSpec h, CouplingSpec g, double eps = 0.0)
      : hamiltonian(h), coupling(g), epsilon(eps) {
    if (eps < 0.0) throw DomainError("ModelSpec: epsilon must be >= 0");
  }
};

double potential_P(const CouplingSpec& g, double m);

/// Squared wave speed of the (v,w) wave formulation:
/// phi(v,w) = H'(v)^2 + m g'(m) H''(v) with m = g^{-1}(w + H(v)).
double phi(double v, double w, const ModelSpec& model);

/// Stress of the p-system encoding the logarithmic game.
double stress_sigma(double z);
double stress_sigma_d1(double z);

/// Convex transform with G'(p) = sign(p) sqrt(1+p^2); corner at p = 0 with
/// subdifferential [-1,1].
double G_of_p(double p);
double G_prime(double p);

/// Closed-form Legendre conjugate of G: 0 on [-1,1], else
/// (|v| sqrt(v^2-1) - acosh|v|)/2.
double G_conjugate(double v);

/// Numeric Legendre transform sup_p (p v - f(p)) by coarse scan over
/// [-p_max, p_max] plus golden-section refinement. Throws WindowError if the
/// maximizer hits the scan boundary.
double legendre(const std::function<double(double)>& f, double v, double p_max);

/// Golden-section minimization of f on [lo, hi] to absolute x-tolerance tol.
/// Returns the minimizing argument (ties resolved toward the smaller end).
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol);

}  // namespace mfglab
