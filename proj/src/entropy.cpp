#include "mfglab/entropy.hpp"

#include <cmath>
#include <sstream>

namespace mfglab {

AlphaPoly ap_const(const Rational& c) {
  AlphaPoly a;
  if (c != 0) a[0] = c;
  return a;
}

AlphaPoly ap_add(const AlphaPoly& a, const AlphaPoly& b) {
  AlphaPoly r = a;
  for (const auto& [k, c] : b) {
    Rational s = (r.count(k) ? r[k] : Rational(0)) + c;
    if (s == 0) r.erase(k); else r[k] = s;
  }
  return r;
}

AlphaPoly ap_mul(const AlphaPoly& a, const AlphaPoly& b) {
  AlphaPoly r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      Rational s = (r.count(ka + kb) ? r[ka + kb] : Rational(0)) + ca * cb;
      if (s == 0) r.erase(ka + kb); else r[ka + kb] = s;
    }
  return r;
}

AlphaPoly ap_scale(const AlphaPoly& a, const Rational& c) {
  AlphaPoly r;
  if (c == 0) return r;
  for (const auto& [k, v] : a) r[k] = v * c;
  return r;
}

bool ap_is_zero(const AlphaPoly& a) { return a.empty(); }

Rational ap_eval(const AlphaPoly& a, const Rational& alpha) {
  Rational r = 0, pw = 1;
  int last = 0;
  for (const auto& [k, c] : a) {
    for (; last < k; ++last) pw *= alpha;
    r += c * pw;
  }
  return r;
}

Poly Poly::monomial(int i, int j, const Rational& c, int alpha_power) {
  Poly p;
  if (c != 0) p.terms[{i, j}] = AlphaPoly{{alpha_power, c}};
  return p;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [m, _] : terms) d = std::max(d, m.degree());
  return d;
}

bool Poly::alpha_free() const {
  for (const auto& [m, c] : terms)
    for (const auto& [k, _] : c)
      if (k != 0) return false;
  return true;
}

void Poly::add_term(Mono m, AlphaPoly c) {
  if (ap_is_zero(c)) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms[m] = std::move(c);
  } else {
    it->second = ap_add(it->second, c);
    if (ap_is_zero(it->second)) terms.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms) r.add_term(m, ap_scale(c, -1));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms)
    for (const auto& [mb, cb] : o.terms)
      r.add_term({ma.i + mb.i, ma.j + mb.j}, ap_mul(ca, cb));
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  for (const auto& [m, a] : terms) r.add_term(m, ap_scale(a, c));
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  for (const auto& [m, c] : terms) {
    if (var == 1 && m.i > 0)
      r.add_term({m.i - 1, m.j}, ap_scale(c, m.i));
    else if (var == 2 && m.j > 0)
      r.add_term({m.i, m.j - 1}, ap_scale(c, m.j));
  }
  return r;
}

Poly Poly::substitute_alpha(const Rational& alpha) const {
  Poly r;
  for (const auto& [m, c] : terms) r.add_term(m, ap_const(ap_eval(c, alpha)));
  return r;
}

double Poly::eval(double x1, double x2, double alpha) const {
  double s = 0.0;
  for (const auto& [m, c] : terms) {
    double coeff = 0.0, apw = 1.0;
    int last = 0;
    for (const auto& [k, q] : c) {
      for (; last < k; ++last) apw *= alpha;
      coeff += static_cast<double>(q) * apw;
    }
    s += coeff * std::pow(x1, m.i) * std::pow(x2, m.j);
  }
  return s;
}

std::string Poly::str(const char* n1, const char* n2) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(";
    bool cf = true;
    for (const auto& [k, q] : c) {
      if (!cf) os << " + ";
      cf = false;
      os << q;
      if (k >= 1) os << "*a" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    os << ")";
    if (m.i > 0) os << "*" << n1 << (m.i > 1 ? "^" + std::to_string(m.i) : "");
    if (m.j > 0) os << "*" << n2 << (m.j > 1 ? "^" + std::to_string(m.j) : "");
  }
  return os.str();
}

namespace {

// c v^2 + alpha z with c = 1 + alpha/2 - 3 alpha^2 / 2 (three times the cubic
// flux coefficient of the z-equation).
Poly system3_speed_sq_3c() {
  Poly c = Poly::monomial(2, 0, 1) + Poly::monomial(2, 0, Rational(1, 2), 1) +
           Poly::monomial(2, 0, Rational(-3, 2), 2);
  return c + Poly::monomial(0, 1, 1, 1);
}

}  // namespace

Poly apply_entropy_operator(EntropyProblem problem, const Poly& E) {
  Poly e11 = E.derivative(1).derivative(1);
  Poly e12 = E.derivative(1).derivative(2);
  Poly e22 = E.derivative(2).derivative(2);
  Poly v = Poly::monomial(1, 0, 1);
  Poly m = Poly::monomial(0, 1, 1);  // x2: m for Ff*, z for System3*
  switch (problem) {
    case EntropyProblem::BfMonotone: return e11 + e22;
    case EntropyProblem::BfAnti: return e11 - e22;
    case EntropyProblem::FfMonotone:
      return m * e11 + (v * e12).scaled(2) - m * e22;
    case EntropyProblem::FfAnti:
      return m * e11 - (v * e12).scaled(2) + m * e22;
    case EntropyProblem::FfLog:
      return e11 + (v * m * e12).scaled(2) - m * m * e22;
    case EntropyProblem::System3Tables:
      return e11 - system3_speed_sq_3c() * e22;
    case EntropyProblem::System3Equivalent:
      return e11 + (v * e12).scaled(2) * Poly::monomial(0, 0, 1, 1) -
             system3_speed_sq_3c() * e22;
  }
  return Poly::zero();
}

namespace {

std::vector<Mono> monomials_up_to(int degree) {
  std::vector<Mono> ms;
  for (int d = 0; d <= degree; ++d)
    for (int i = d; i >= 0; --i) ms.push_back({i, d - i});
  return ms;
}

// Null space of the rational matrix (rows x cols), as column-space vectors.
std::vector<std::vector<Rational>> null_space(
    std::vector<std::vector<Rational>> a, int cols) {
  int rows = static_cast<int>(a.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    Rational inv = a[r][c];
    for (int k = c; k < cols; ++k) a[r][k] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> x(cols, 0);
    x[c] = 1;
    for (size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = -a[k][c];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Reduce polynomials to graded-lex reduced row-echelon form, leading
// coefficient 1, sorted ascending by leading monomial. Requires alpha-free
// coefficients.
std::vector<Poly> normalize_basis(std::vector<Poly> ps) {
  auto leading = [](const Poly& p) { return p.terms.rbegin()->first; };
  std::vector<Poly> out;
  for (auto& p : ps) {
    for (const auto& q : out) {
      if (p.is_zero()) break;
      Mono lq = q.terms.rbegin()->first;
      auto it = p.terms.find(lq);
      if (it != p.terms.end()) p = p - q.scaled(it->second.at(0));
    }
    if (p.is_zero()) continue;
    p = p.scaled(Rational(1) / p.terms.rbegin()->second.at(0));
    // back-substitute into earlier rows
    Mono lp = leading(p);
    for (auto& q : out) {
      auto it = q.terms.find(lp);
      if (it != q.terms.end()) q = q - p.scaled(it->second.at(0));
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
    return MonoGradedLess{}(leading(a), leading(b));
  });
  return out;
}

}  // namespace

std::vector<Poly> polynomial_entropy_basis(EntropyProblem problem, int degree,
                                           const std::optional<Rational>& alpha) {
  bool parametric = problem == EntropyProblem::System3Tables ||
                    problem == EntropyProblem::System3Equivalent;
  if (parametric && !alpha)
    throw DomainError("polynomial_entropy_basis: System3 needs a numeric alpha");

  auto inputs = monomials_up_to(degree);
  // The operators raise degree by at most 1 (FfLog by 1, System3 by 1).
  auto outputs = monomials_up_to(degree + 1);
  std::map<Mono, int, MonoGradedLess> out_index;
  for (size_t k = 0; k < outputs.size(); ++k) out_index[outputs[k]] = (int)k;

  std::vector<std::vector<Rational>> a(
      outputs.size(), std::vector<Rational>(inputs.size(), 0));
  for (size_t c = 0; c < inputs.size(); ++c) {
    Poly img = apply_entropy_operator(
        problem, Poly::monomial(inputs[c].i, inputs[c].j, 1));
    if (parametric) img = img.substitute_alpha(*alpha);
    for (const auto& [m, coeff] : img.terms)
      a[out_index.at(m)][c] = coeff.at(0);
  }

  auto vecs = null_space(std::move(a), static_cast<int>(inputs.size()));
  std::vector<Poly> basis;
  for (const auto& x : vecs) {
    Poly p;
    for (size_t c = 0; c < inputs.size(); ++c)
      if (x[c] != 0) p.add_term(inputs[c], ap_const(x[c]));
    basis.push_back(std::move(p));
  }
  return normalize_basis(std::move(basis));
}

bool in_span(const std::vector<Poly>& basis, const Poly& candidate) {
  Poly r = candidate;
  // Basis is in reduced echelon form; reduce the candidate against it.
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    if (r.is_zero()) return true;
    Mono lq = it->terms.rbegin()->first;
    auto f = r.terms.find(lq);
    if (f != r.terms.end()) r = r - it->scaled(f->second.at(0));
  }
  return r.is_zero();
}

EntropyPde EntropyPde::backward_forward(const ModelSpec& model) {
  auto H = model.hamiltonian;
  auto g = model.coupling;
  return {
      [H](double v, double) { return 1.0 / H.d2(v); },
      [](double, double) { return 0.0; },
      [g](double, double m) { return 1.0 / g.potential_d2(m); },
  };
}

EntropyPde EntropyPde::forward_forward(const ModelSpec& model) {
  auto H = model.hamiltonian;
  auto g = model.coupling;
  return {
      [H](double v, double) { return 1.0 / H.d2(v); },
      [H, g](double v, double m) { return 2.0 * H.d1(v) / (H.d2(v) * g.d1(m)); },
      [g](double, double m) { return -m / g.d1(m); },
  };
}

EntropyFn EntropyFn::from_poly(const Poly& p, double alpha) {
  auto ev = [alpha](const Poly& q) {
    return [q, alpha](double a, double b) { return q.eval(a, b, alpha); };
  };
  return {ev(p),
          ev(p.derivative(1)),
          ev(p.derivative(2)),
          ev(p.derivative(1).derivative(1)),
          ev(p.derivative(1).derivative(2)),
          ev(p.derivative(2).derivative(2))};
}

double entropy_residual(const EntropyFn& E, const EntropyPde& pde,
                        const std::vector<std::pair<double, double>>& samples) {
  double worst = 0.0;
  for (const auto& [v, m] : samples) {
    double r = pde.c_vv(v, m) * E.d11(v, m) + pde.c_vm(v, m) * E.d12(v, m) +
               pde.c_mm(v, m) * E.d22(v, m);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

EntropyFn separable_entropy(double lambda, int sign_exp, bool use_sin) {
  if (!(lambda > 0.0)) throw DomainError("separable_entropy: lambda must be > 0");
  double s = std::sqrt(lambda) * (sign_exp >= 0 ? 1.0 : -1.0);
  double k = std::sqrt(lambda);
  auto trig = [use_sin](double x) { return use_sin ? std::sin(x) : std::cos(x); };
  auto trig_d = [use_sin](double x) { return use_sin ? std::cos(x) : -std::sin(x); };
  return {
      [=](double v, double m) { return std::exp(s * v) * trig(k * m); },
      [=](double v, double m) { return s * std::exp(s * v) * trig(k * m); },
      [=](double v, double m) { return k * std::exp(s * v) * trig_d(k * m); },
      [=](double v, double m) { return s * s * std::exp(s * v) * trig(k * m); },
      [=](double v, double m) { return s * k * std::exp(s * v) * trig_d(k * m); },
      [=](double v, double m) { return -k * k * std::exp(s * v) * trig(k * m); },
  };
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  struct Impl {
    const std::function<double(double)>& f;
    int evals = 0;
    double recurse(double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      evals += 2;
      if (evals > 200000)
        throw IntegrationError("adaptive Simpson: too many evaluations");
      double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth > 48)
        throw IntegrationError("adaptive Simpson: max depth reached");
      if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  if (a == b) return 0.0;
  Impl impl{f};
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return impl.recurse(a, m, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

std::function<double(double, double)> entropy_flux(const EntropyFn& E,
                                                   FluxProblem problem,
                                                   const ModelSpec& model,
                                                   double v_base, double m_base,
                                                   bool v_path_first) {
  auto H = model.hamiltonian;
  auto g = model.coupling;
  double sgn = problem == FluxProblem::ForwardForward ? 1.0 : -1.0;
  // Forward-forward:  Q_v = E_v H' - E_m m H'',  Q_m = -E_v g' - E_m H'.
  // Backward-forward flips the sign of the E_v terms.
  auto q_v = [=](double v, double m) {
    return sgn * (E.d1(v, m) * H.d1(v)) - E.d2(v, m) * m * H.d2(v);
  };
  auto q_m = [=](double v, double m) {
    return -sgn * (E.d1(v, m) * g.d1(m)) - E.d2(v, m) * H.d1(v);
  };
  const double tol = 1e-10;
  return [=](double v, double m) {
    if (v_path_first) {
      double a = adaptive_simpson([&](double s) { return q_v(s, m_base); },
                                  v_base, v, tol);
      double b = adaptive_simpson([&](double s) { return q_m(v, s); }, m_base,
                                  m, tol);
      return a + b;
    }
    double a = adaptive_simpson([&](double s) { return q_m(v_base, s); },
                                m_base, m, tol);
    double b = adaptive_simpson([&](double s) { return q_v(s, m); }, v_base, v,
                                tol);
    return a + b;
  };
}

Poly z_invariant_residual(const Poly& F) {
  // phi = (1 + alpha/2) v^2 + alpha w, variables (x1=v, x2=w)
  Poly phi = Poly::monomial(2, 0, 1) + Poly::monomial(2, 0, Rational(1, 2), 1) +
             Poly::monomial(0, 1, 1, 1);
  Poly f_vv = F.derivative(1).derivative(1);
  Poly inner = F.derivative(2) * phi;
  return f_vv - inner.derivative(2);
}

Poly verify_z_invariant() {
  Poly F = Poly::monomial(0, 1, 1) + Poly::monomial(2, 0, Rational(1, 2), 1);
  return z_invariant_residual(F);
}

}  // namespace mfglab
