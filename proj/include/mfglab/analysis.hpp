#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mfglab/grid.hpp"
#include "mfglab/models.hpp"

namespace mfglab {

/// Strictly convex profile Phi on an open interval (lo, hi), with
/// Psi' = sqrt(Phi'') supplied in closed form per catalog entry so that
/// the Poincare quotient needs no nested quadrature.
struct ConvexProfile {
  std::string name;
  double lo, hi;  // open interval; +-inf allowed
  std::function<double(double)> phi, phi_d1, phi_d2, psi;

  bool contains(double s) const { return s > lo && s < hi; }

  // Catalog: s^p (p > 1 or p < 0), -s^p (0 < p < 1), -ln s, s ln s,
  // s^{2n}, e^{as}. All on (0, inf) except the last two (whole line).
  static ConvexProfile power(double p);
  static ConvexProfile neg_power(double p);
  static ConvexProfile neg_log();
  static ConvexProfile s_log_s();
  static ConvexProfile even_power(int n);
  static ConvexProfile exponential(double a);

  /// Psi computed by quadrature from a base point; for profiles without a
  /// closed-form antiderivative of sqrt(Phi'').
  static ConvexProfile numeric(std::string name, double lo, double hi,
                               std::function<double(double)> phi,
                               std::function<double(double)> phi_d1,
                               std::function<double(double)> phi_d2,
                               double psi_base);

  static ConvexProfile from_hamiltonian(const HamiltonianSpec& h);
  static ConvexProfile from_potential(const CouplingSpec& g);
};

/// The seven fuzz-suite representatives, one per catalog family.
std::vector<ConvexProfile> profile_catalog();

/// C(a,b) = (Phi(a) + Phi(b) - 2 Phi((a+b)/2)) / (Psi(b) - Psi(a))^2.
/// Nearly coincident endpoints return the expansion limit 1/4.
double poincare_constant(const ConvexProfile& profile, double a, double b);

struct PoincareSup {
  double value = 0.0;      // lattice max (the sup estimate)
  double inner_max = 0.0;  // max with the outer 10% of the lattice removed
  bool plateau = false;    // value <= 1.01 * inner_max
};

/// Sup of C(a,b) over a log-spaced lattice. The plateau flag certifies that
/// the outer shell of the lattice does not raise the max by more than 1%,
/// the numerical evidence for finiteness of the sup.
PoincareSup poincare_sup(const ConvexProfile& profile);

/// Margin RHS - LHS of
///   int Phi(f) - Phi(int f)  <=  C(min f, max f) int Phi''(f) f'^2,
/// with f' by central differences. Nonnegative up to discretization.
double poincare_check(const GridField& f, const ConvexProfile& profile);

struct JensenDecomposition {
  double A = 0, p = 0, q = 0, A1 = 0, A2 = 0, gamma = 0;
};

/// Jensen gap int Phi(f) - Phi(int f) and its two-mean decomposition over
/// the sub/super-level sets of the mean. Checks the chain
/// gap >= p Phi(A1) + q Phi(A2) - Phi(A) >= 0 within 1e-10.
std::pair<double, JensenDecomposition> jensen_gap(const GridField& f,
                                                  const ConvexProfile& profile);

struct DecayFit {
  double rate = 0.0;
  double r2 = 0.0;
};

/// Least squares on log I over the window where I > 1e-12 * I(0).
/// Throws FitError with fewer than 10 usable points.
DecayFit decay_fit(const std::vector<double>& times,
                   const std::vector<double>& I);

}  // namespace mfglab
