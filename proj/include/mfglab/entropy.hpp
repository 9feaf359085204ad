#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfglab/models.hpp"

namespace mfglab {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in the exponent parameter alpha, exponent -> coefficient.
/// No zero coefficients are stored.
using AlphaPoly = std::map<int, Rational>;

AlphaPoly ap_const(const Rational& c);
AlphaPoly ap_add(const AlphaPoly& a, const AlphaPoly& b);
AlphaPoly ap_mul(const AlphaPoly& a, const AlphaPoly& b);
AlphaPoly ap_scale(const AlphaPoly& a, const Rational& c);
bool ap_is_zero(const AlphaPoly& a);
Rational ap_eval(const AlphaPoly& a, const Rational& alpha);

/// Monomial x1^i x2^j. Ordered graded-lexicographically: total degree first,
/// then the x1 exponent.
struct Mono {
  int i = 0, j = 0;
  int degree() const { return i + j; }
  friend bool operator==(const Mono& a, const Mono& b) {
    return a.i == b.i && a.j == b.j;
  }
};

struct MonoGradedLess {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i < b.i;
  }
};

/// Bivariate polynomial with coefficients that are polynomials in alpha.
/// Variable meaning depends on the problem tag: (v,m), (v,w), or (v,z).
struct Poly {
  std::map<Mono, AlphaPoly, MonoGradedLess> terms;

  static Poly zero() { return {}; }
  static Poly monomial(int i, int j, const Rational& c = 1,
                       int alpha_power = 0);

  bool is_zero() const { return terms.empty(); }
  int degree() const;
  bool alpha_free() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly derivative(int var) const;  // var: 1 or 2
  Poly substitute_alpha(const Rational& alpha) const;
  double eval(double x1, double x2, double alpha = 0.0) const;
  std::string str(const char* n1, const char* n2) const;

  void add_term(Mono m, AlphaPoly c);
};

/// Problem tags for the linear entropy operators, in cleared-denominator
/// polynomial form (multiplying through by m, or by denominators in alpha,
/// preserves the null space on the admissible domain m > 0).
///
/// BfMonotone/BfAnti: (v,m), H = v^2/2, g = +-m^2/2:   E_vv +- E_mm
/// FfMonotone/FfAnti: (v,m), H = v^2/2, g = +-m^2/2:   m E_vv +- 2v E_vm -+ m E_mm
/// FfLog:             (v,m), H = v^2/2, g = ln m:      E_vv + 2vm E_vm - m^2 E_mm
/// System3Tables:     (v,z): E_vv - (c v^2 + alpha z) E_zz, c = 1 + a/2 - 3a^2/2
/// System3Equivalent: (v,z): E_vv + 2 alpha v E_vz - (c v^2 + alpha z) E_zz
///
/// System3Tables is the condition the paper's degree table satisfies (its
/// printed v-equation); System3Equivalent is the condition for the system
/// actually equivalent to the (v,m) formulation, which the solver evolves.
enum class EntropyProblem {
  BfMonotone,
  BfAnti,
  FfMonotone,
  FfAnti,
  FfLog,
  System3Tables,
  System3Equivalent,
};

Poly apply_entropy_operator(EntropyProblem problem, const Poly& E);

/// Exact-rational null space of the entropy operator restricted to
/// polynomials of total degree <= degree, in graded-lex reduced form with
/// leading coefficient 1. System3 problems require a numeric alpha.
std::vector<Poly> polynomial_entropy_basis(
    EntropyProblem problem, int degree,
    const std::optional<Rational>& alpha = std::nullopt);

/// Exact membership of candidate in span(basis).
bool in_span(const std::vector<Poly>& basis, const Poly& candidate);

/// Numeric second-order linear operator acting on C^2 entropies E(v,m).
struct EntropyPde {
  std::function<double(double, double)> c_vv, c_vm, c_mm;

  /// (1/H'') E_vv + (1/P'') E_mm for the backward-forward system.
  static EntropyPde backward_forward(const ModelSpec& model);
  /// (1/H'') E_vv + (2H'/(H'' g')) E_vm - (m/g') E_mm for forward-forward.
  static EntropyPde forward_forward(const ModelSpec& model);
};

/// C^2 function of two variables with first and second partials.
struct EntropyFn {
  std::function<double(double, double)> value, d1, d2, d11, d12, d22;

  static EntropyFn from_poly(const Poly& p, double alpha = 0.0);
};

/// sup |c_vv E_11 + c_vm E_12 + c_mm E_22| over the samples.
double entropy_residual(const EntropyFn& E, const EntropyPde& pde,
                        const std::vector<std::pair<double, double>>& samples);

/// Separated entropy e^{s sqrt(lambda) v} * cos/sin(sqrt(lambda) m) of the
/// monotone quadratic backward-forward operator. sign_exp is +-1.
EntropyFn separable_entropy(double lambda, int sign_exp, bool use_sin = false);

enum class FluxProblem { BackwardForward, ForwardForward };

/// Entropy flux Q reconstructed by line integration of (Q_v, Q_m) from the
/// base point along axis-aligned segments (adaptive Simpson, tol 1e-10).
/// With v_path_first = false the integration path order is swapped, which
/// gives the cross-path consistency check.
std::function<double(double, double)> entropy_flux(const EntropyFn& E,
                                                   FluxProblem problem,
                                                   const ModelSpec& model,
                                                   double v_base, double m_base,
                                                   bool v_path_first = true);

/// Symbolic residual of F(v,w) under the conservation condition
/// F_vv = d/dw (F_w * phi) with phi = (1 + alpha/2) v^2 + alpha w
/// (quadratic Hamiltonian, power coupling; alpha symbolic).
Poly z_invariant_residual(const Poly& F);

/// Residual of F = w + (alpha/2) v^2; identically zero.
Poly verify_z_invariant();

}  // namespace mfglab
