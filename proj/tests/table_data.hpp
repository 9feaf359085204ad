#pragma once

// The published degree tables of polynomial conserved quantities, as exact
// rational polynomials. Shared between the unit tests and the acceptance
// checks.

#include <vector>

#include "mfglab/entropy.hpp"

namespace mfglab::tables {

struct Term {
  int i, j;
  AlphaPoly c;
};

inline Poly make_poly(const std::vector<Term>& terms) {
  Poly p;
  for (const auto& t : terms) p.add_term({t.i, t.j}, t.c);
  return p;
}

inline AlphaPoly ac(const Rational& r) { return ap_const(r); }

// Backward-forward, monotone quadratic coupling: E_vv + E_mm = 0.
inline std::vector<Poly> table1() {
  return {
      make_poly({{3, 0, ac(1)}, {1, 2, ac(-3)}}),
      make_poly({{0, 3, ac(1)}, {2, 1, ac(-3)}}),
      make_poly({{2, 2, ac(-6)}, {0, 4, ac(1)}, {4, 0, ac(1)}}),
      make_poly({{3, 1, ac(1)}, {1, 3, ac(-1)}}),
      make_poly({{3, 2, ac(-10)}, {1, 4, ac(5)}, {5, 0, ac(1)}}),
      make_poly({{2, 3, ac(-10)}, {4, 1, ac(5)}, {0, 5, ac(1)}}),
      make_poly({{2, 4, ac(15)}, {4, 2, ac(-15)}, {0, 6, ac(-1)}, {6, 0, ac(1)}}),
      make_poly({{1, 5, ac(1)}, {3, 3, ac(Rational(-10, 3))}, {5, 1, ac(1)}}),
  };
}

// Backward-forward, anti-monotone quadratic coupling: E_vv - E_mm = 0.
inline std::vector<Poly> table2() {
  return {
      make_poly({{1, 2, ac(3)}, {3, 0, ac(1)}}),
      make_poly({{2, 1, ac(3)}, {0, 3, ac(1)}}),
      make_poly({{2, 2, ac(6)}, {0, 4, ac(1)}, {4, 0, ac(1)}}),
      make_poly({{1, 3, ac(1)}, {3, 1, ac(1)}}),
      make_poly({{3, 2, ac(10)}, {1, 4, ac(5)}, {5, 0, ac(1)}}),
      make_poly({{2, 3, ac(10)}, {4, 1, ac(5)}, {0, 5, ac(1)}}),
      make_poly({{2, 4, ac(15)}, {4, 2, ac(15)}, {0, 6, ac(1)}, {6, 0, ac(1)}}),
      make_poly({{1, 5, ac(1)}, {3, 3, ac(Rational(10, 3))}, {5, 1, ac(1)}}),
  };
}

// Forward-forward, monotone quadratic coupling.
inline std::vector<Poly> table3() {
  return {
      make_poly({{3, 0, ac(1)}, {1, 2, ac(-3)}}),
      make_poly({{2, 2, ac(-2)}, {0, 4, ac(Rational(-1, 3))}, {4, 0, ac(1)}}),
      make_poly({{1, 3, ac(1)}}),
      make_poly({{3, 2, ac(-2)}, {1, 4, ac(-3)}, {5, 0, ac(1)}}),
      make_poly({{2, 4, ac(Rational(45, 7))},
                 {4, 2, ac(Rational(-15, 7))},
                 {0, 6, ac(Rational(3, 7))},
                 {6, 0, ac(1)}}),
  };
}

// Forward-forward, anti-monotone quadratic coupling.
inline std::vector<Poly> table4() {
  return {
      make_poly({{1, 2, ac(3)}, {3, 0, ac(1)}}),
      make_poly({{2, 2, ac(2)}, {0, 4, ac(Rational(-1, 3))}, {4, 0, ac(1)}}),
      make_poly({{1, 3, ac(1)}}),
      make_poly({{3, 2, ac(2)}, {1, 4, ac(-3)}, {5, 0, ac(1)}}),
      make_poly({{2, 4, ac(Rational(45, 7))},
                 {4, 2, ac(Rational(15, 7))},
                 {0, 6, ac(Rational(-3, 7))},
                 {6, 0, ac(1)}}),
  };
}

// The (v,z) system, coefficients polynomial in the exponent alpha.
inline std::vector<Poly> table5() {
  return {
      make_poly({{1, 1, ac(1)}}),
      make_poly({{4, 0, {{2, 3}, {1, -1}, {0, -2}}},
                 {2, 1, {{1, -12}}},
                 {0, 2, ac(-12)}}),
      make_poly({{5, 0, {{2, 9}, {1, -3}, {0, -6}}},
                 {3, 1, {{1, -20}}},
                 {1, 2, ac(-60)}}),
      make_poly({{6, 0, {{3, 6}, {2, -2}, {1, -4}}},
                 {4, 1, {{2, 5}, {1, -5}, {0, -10}}},
                 {2, 2, {{1, -60}}},
                 {0, 3, ac(-20)}}),
  };
}

}  // namespace mfglab::tables
