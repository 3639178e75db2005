#pragma once

// Homogeneous forms in two variables (s, t) or three variables (x, y, z)
// with dense coefficient vectors over a fixed-degree graded basis.
// Monomial order: graded lex with x > y > z and s > t.

#include "jumplab/linalg.hpp"
#include "jumplab/scalar.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace jumplab {

inline Eigen::Index hom_basis_size(int num_vars, int degree) {
  if (degree < 0) return 0;
  if (num_vars == 2) return degree + 1;
  if (num_vars == 3)
    return static_cast<Eigen::Index>(degree + 1) * (degree + 2) / 2;
  throw std::invalid_argument("hom_basis_size: num_vars must be 2 or 3");
}

// Exponent tuples of the degree-d basis, in monomial order.
inline std::vector<std::array<int, 3>> hom_basis(int num_vars, int degree) {
  std::vector<std::array<int, 3>> out;
  if (num_vars == 2) {
    for (int i = 0; i <= degree; ++i) out.push_back({degree - i, i, 0});
  } else if (num_vars == 3) {
    for (int a = degree; a >= 0; --a)
      for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  } else {
    throw std::invalid_argument("hom_basis: num_vars must be 2 or 3");
  }
  return out;
}

inline Eigen::Index monomial_index(int num_vars, int degree, int a, int b) {
  if (num_vars == 2) return degree - a;
  // 3 vars: blocks of decreasing x-exponent, then decreasing y-exponent
  Eigen::Index block = static_cast<Eigen::Index>(degree - a) * (degree - a + 1) / 2;
  return block + (degree - a - b);
}

template <class S>
class HomForm {
 public:
  HomForm() : num_vars_(2), degree_(0), coeffs_(VectorX<S>::Zero(1)) {}
  HomForm(int num_vars, int degree)
      : num_vars_(num_vars), degree_(degree) {
    coeffs_ = VectorX<S>::Zero(hom_basis_size(num_vars, degree));
  }
  HomForm(int num_vars, int degree, VectorX<S> coeffs)
      : num_vars_(num_vars), degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != hom_basis_size(num_vars, degree))
      throw std::invalid_argument("HomForm: coefficient vector length mismatch");
  }

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const VectorX<S>& coefficient_vector() const { return coeffs_; }

  const S& coeff(int a, int b) const {
    return coeffs_(monomial_index(num_vars_, degree_, a, b));
  }
  S& coeff(int a, int b) {
    return coeffs_(monomial_index(num_vars_, degree_, a, b));
  }

  bool is_zero() const {
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      if (!scalar_is_zero(coeffs_(i))) return false;
    return true;
  }

  // zero forms compare equal regardless of recorded degree
  friend bool operator==(const HomForm& f, const HomForm& g) {
    if (f.is_zero() && g.is_zero()) return true;
    if (f.num_vars_ != g.num_vars_ || f.degree_ != g.degree_) return false;
    for (Eigen::Index i = 0; i < f.coeffs_.size(); ++i)
      if (!(f.coeffs_(i) == g.coeffs_(i))) return false;
    return true;
  }
  friend bool operator!=(const HomForm& f, const HomForm& g) { return !(f == g); }

  friend HomForm operator+(const HomForm& f, const HomForm& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.num_vars_ != g.num_vars_ || f.degree_ != g.degree_)
      throw std::invalid_argument("HomForm: degree mismatch in +");
    return HomForm(f.num_vars_, f.degree_, f.coeffs_ + g.coeffs_);
  }
  friend HomForm operator-(const HomForm& f, const HomForm& g) {
    return f + (-g);
  }
  HomForm operator-() const { return HomForm(num_vars_, degree_, -coeffs_); }

  friend HomForm operator*(const S& c, const HomForm& f) {
    return HomForm(f.num_vars_, f.degree_, (f.coeffs_ * c).eval());
  }

  friend HomForm operator*(const HomForm& f, const HomForm& g) {
    if (f.num_vars_ != g.num_vars_)
      throw std::invalid_argument("HomForm: variable count mismatch in *");
    const int nv = f.num_vars_;
    const int d = f.degree_ + g.degree_;
    HomForm out(nv, d);
    auto fb = hom_basis(nv, f.degree_);
    auto gb = hom_basis(nv, g.degree_);
    for (std::size_t i = 0; i < fb.size(); ++i) {
      if (scalar_is_zero(f.coeffs_(static_cast<Eigen::Index>(i)))) continue;
      for (std::size_t j = 0; j < gb.size(); ++j) {
        if (scalar_is_zero(g.coeffs_(static_cast<Eigen::Index>(j)))) continue;
        Eigen::Index idx = monomial_index(nv, d, fb[i][0] + gb[j][0], fb[i][1] + gb[j][1]);
        out.coeffs_(idx) = out.coeffs_(idx) +
                           f.coeffs_(static_cast<Eigen::Index>(i)) *
                               g.coeffs_(static_cast<Eigen::Index>(j));
      }
    }
    return out;
  }

  S evaluate(const std::vector<S>& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
      throw std::invalid_argument("HomForm: evaluation point arity mismatch");
    auto basis = hom_basis(num_vars_, degree_);
    S acc{};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      S term = coeffs_(static_cast<Eigen::Index>(i));
      for (int v = 0; v < num_vars_; ++v)
        for (int e = 0; e < basis[i][static_cast<std::size_t>(v)]; ++e)
          term = term * point[static_cast<std::size_t>(v)];
      acc = acc + term;
    }
    return acc;
  }

  static HomForm monomial(int num_vars, int a, int b, int c, const S& coeff) {
    int degree = a + b + (num_vars == 3 ? c : 0);
    HomForm out(num_vars, degree);
    out.coeffs_(monomial_index(num_vars, degree, a, b)) = coeff;
    return out;
  }

 private:
  int num_vars_;
  int degree_;
  VectorX<S> coeffs_;
};

// f(A, B, C) for a 3-variable form f and binary forms A, B, C of equal
// degree d; realizes pullback along (A : B : C) : P^1 -> P^2.
template <class S>
HomForm<S> substitute(const HomForm<S>& f, const HomForm<S>& a,
                      const HomForm<S>& b, const HomForm<S>& c) {
  if (f.num_vars() != 3)
    throw std::invalid_argument("substitute: form must have 3 variables");
  if (a.num_vars() != 2 || b.num_vars() != 2 || c.num_vars() != 2 ||
      a.degree() != b.degree() || b.degree() != c.degree())
    throw std::invalid_argument("substitute: need three binary forms of equal degree");
  const int d = a.degree();
  const int out_deg = d * f.degree();
  // power tables
  auto powers = [&](const HomForm<S>& g) {
    std::vector<HomForm<S>> p;
    HomForm<S> one(2, 0);
    p.push_back(one);
    p[0].coeff(0, 0) = ScalarOps<S>::from_int(1, S{});
    for (int e = 1; e <= f.degree(); ++e) p.push_back(p.back() * g);
    return p;
  };
  auto pa = powers(a), pb = powers(b), pc = powers(c);
  HomForm<S> out(2, out_deg);
  auto basis = hom_basis(3, f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const S& cf = f.coefficient_vector()(static_cast<Eigen::Index>(i));
    if (scalar_is_zero(cf)) continue;
    HomForm<S> term = pa[static_cast<std::size_t>(basis[i][0])] *
                      pb[static_cast<std::size_t>(basis[i][1])] *
                      pc[static_cast<std::size_t>(basis[i][2])];
    // term has degree d * f.degree() unless d == 0
    out = out + cf * term;
  }
  return out;
}

namespace detail {

// binary form -> univariate coefficients in s after setting t = 1,
// lowest degree first: f = sum coeff[i] s^i
template <class S>
std::vector<S> dehomogenize_t(const HomForm<S>& f) {
  const int d = f.degree();
  std::vector<S> u(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) u[static_cast<std::size_t>(i)] = f.coeff(i, d - i);
  return u;
}

template <class S>
void trim(std::vector<S>& u) {
  while (!u.empty() && scalar_is_zero(u.back())) u.pop_back();
}

template <class S>
std::vector<S> poly_mod(std::vector<S> a, const std::vector<S>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    S q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = a[shift + i] - q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// h = s^s_pow * t^t_pow * core with core having nonzero extreme
// coefficients; returns the dehomogenized core, lowest s-degree first.
template <class S>
std::vector<S> split_variable_powers(const HomForm<S>& h, int& s_pow, int& t_pow) {
  const int d = h.degree();
  int sp = 0;
  while (sp <= d && scalar_is_zero(h.coeff(sp, d - sp))) ++sp;
  int tp = 0;
  while (tp <= d && scalar_is_zero(h.coeff(d - tp, tp))) ++tp;
  s_pow = sp;
  t_pow = tp;
  std::vector<S> u(static_cast<std::size_t>(d - sp - tp) + 1);
  for (int i = 0; i <= d - sp - tp; ++i)
    u[static_cast<std::size_t>(i)] = h.coeff(i + sp, d - i - sp);
  return u;
}

template <class S>
std::vector<S> poly_gcd(std::vector<S> a, std::vector<S> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    S inv = ScalarOps<S>::from_int(1, a.back()) / a.back();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

}  // namespace detail

// Monic gcd of two binary forms.  Powers of s and t are split off first
// so the univariate Euclid runs on forms with nonzero extreme coefficients.
template <class S>
HomForm<S> hom_gcd(const HomForm<S>& f, const HomForm<S>& g) {
  if (f.num_vars() != 2 || g.num_vars() != 2)
    throw std::invalid_argument("hom_gcd: binary forms only");
  if (f.is_zero() && g.is_zero())
    throw std::invalid_argument("hom_gcd: both inputs zero");
  if (f.is_zero()) {
    S lead{};
    for (int i = 0; i <= g.degree(); ++i)
      if (!scalar_is_zero(g.coeff(g.degree() - i, i))) {
        lead = g.coeff(g.degree() - i, i);
        break;
      }
    return (ScalarOps<S>::from_int(1, lead) / lead) * g;
  }
  if (g.is_zero()) return hom_gcd(g, f);

  int fs, ft, gs, gt;
  auto uf = detail::split_variable_powers(f, fs, ft);
  auto ug = detail::split_variable_powers(g, gs, gt);
  auto ug_gcd = detail::poly_gcd(uf, ug);
  const int core_deg = static_cast<int>(ug_gcd.size()) - 1;
  const int sp = std::min(fs, gs);
  const int tp = std::min(ft, gt);
  HomForm<S> out(2, core_deg + sp + tp);
  for (int i = 0; i <= core_deg; ++i)
    out.coeff(i + sp, core_deg - i + tp) = ug_gcd[static_cast<std::size_t>(i)];
  return out;
}

// Remainder of exact division f / g for binary forms; zero iff g | f.
template <class S>
bool divides(const HomForm<S>& g, const HomForm<S>& f) {
  if (f.is_zero()) return true;
  if (g.is_zero()) return false;
  if (g.degree() > f.degree()) return false;
  // treat as univariate in s with coefficients shifted by t powers:
  // full bivariate division works on the dehomogenized pair plus t-power counts
  int fs, ft, gs, gt;
  auto uf = detail::split_variable_powers(f, fs, ft);
  auto ug = detail::split_variable_powers(g, gs, gt);
  if (gs > fs || gt > ft) return false;
  auto rem = detail::poly_mod(uf, ug);
  return rem.empty();
}

// Sylvester resultant of two binary forms (via their dehomogenizations);
// nonzero iff the forms share no projective root, provided neither is
// divisible by t... callers pass forms with full degree or accept the
// dehomogenized-resultant semantics used in the gcd tests.
template <class S>
S resultant(const HomForm<S>& f, const HomForm<S>& g) {
  const int m = f.degree(), n = g.degree();
  MatrixX<S> syl = MatrixX<S>::Zero(m + n, m + n);
  // rows: t^j * f for j < n, then s-shifted g
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= m; ++i) syl(j, j + i) = f.coeff(m - i, i);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i <= n; ++i) syl(n + j, j + i) = g.coeff(n - i, i);
  return determinant(syl);
}

// Matrix of multiplication by a binary form g: coefficient vectors of
// degree n forms -> degree n + deg(g) forms.  Empty domain/codomain give
// zero-size matrices.
template <class S>
MatrixX<S> multiplication_matrix_p1(const HomForm<S>& g, int n) {
  const int k = g.degree();
  const Eigen::Index rows = n + k >= 0 ? n + k + 1 : 0;
  const Eigen::Index cols = n >= 0 ? n + 1 : 0;
  MatrixX<S> m = MatrixX<S>::Zero(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {     // s^(n-j) t^j
    for (int i = 0; i <= k; ++i) {              // g coeff of s^(k-i) t^i
      m(j + i, j) = g.coeff(k - i, i);
    }
  }
  return m;
}

// Same for a 3-variable form on P^2 coefficient spaces.
template <class S>
MatrixX<S> multiplication_matrix_p2(const HomForm<S>& g, int n) {
  const int k = g.degree();
  const Eigen::Index rows = hom_basis_size(3, n + k);
  const Eigen::Index cols = hom_basis_size(3, n);
  MatrixX<S> m = MatrixX<S>::Zero(rows, cols);
  if (rows == 0 || cols == 0) return m;
  auto dom = hom_basis(3, n);
  auto gb = hom_basis(3, k);
  for (std::size_t j = 0; j < dom.size(); ++j) {
    for (std::size_t i = 0; i < gb.size(); ++i) {
      const S& c = g.coefficient_vector()(static_cast<Eigen::Index>(i));
      if (scalar_is_zero(c)) continue;
      Eigen::Index r =
          monomial_index(3, n + k, dom[j][0] + gb[i][0], dom[j][1] + gb[i][1]);
      m(r, static_cast<Eigen::Index>(j)) = m(r, static_cast<Eigen::Index>(j)) + c;
    }
  }
  return m;
}

}  // namespace jumplab
