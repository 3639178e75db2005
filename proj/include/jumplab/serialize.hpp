#pragma once

// Text serialization: presentations, curve maps and form matrices in a
// line-oriented format that round-trips bit-exactly.  Monomials are
// written as exponent tuples with their coefficient; zero entries are
// omitted.

#include "jumplab/fitting.hpp"
#include "jumplab/restrict.hpp"
#include "jumplab/sheaf.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace jumplab {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-scalar field header and coefficient lexing.  Fp records its
// modulus (0 when every coefficient is an adopting literal); Rational
// uses the tag "rational" and exact n/d strings.
template <class S>
struct ScalarCodec;

template <>
struct ScalarCodec<Fp> {
  static std::string field_tag(const Fp& sample) {
    return std::to_string(sample.modulus());
  }
  static Fp context_from_tag(const std::string& tag) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(tag);
    } catch (const std::exception&) {
      throw ParseError("field: expected a modulus, got '" + tag + "'");
    }
    return p == 0 ? Fp(1) : Fp(1, p);
  }
  static std::string write(const Fp& a) { return a.str(); }
  static Fp read(const std::string& tok, const Fp& ctx) {
    long long v = 0;
    try {
      v = std::stoll(tok);
    } catch (const std::exception&) {
      throw ParseError("coefficient: expected an integer, got '" + tok + "'");
    }
    return ScalarOps<Fp>::from_int(v, ctx);
  }
};

template <>
struct ScalarCodec<Rational> {
  static std::string field_tag(const Rational&) { return "rational"; }
  static Rational context_from_tag(const std::string& tag) {
    if (tag != "rational") throw ParseError("field: expected 'rational', got '" + tag + "'");
    return Rational(1);
  }
  static std::string write(const Rational& a) { return a.str(); }
  static Rational read(const std::string& tok, const Rational&) {
    try {
      return Rational(tok);
    } catch (const std::exception&) {
      throw ParseError("coefficient: bad rational '" + tok + "'");
    }
  }
};

namespace detail {

template <class S>
S field_sample(const std::vector<std::vector<HomForm<S>>>& matrix) {
  for (const auto& row : matrix)
    for (const auto& e : row) {
      const auto& v = e.coefficient_vector();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!scalar_is_zero(v(i))) return v(i);
    }
  return S{};
}

template <class S>
void write_form_terms(std::ostream& os, const HomForm<S>& f) {
  auto basis = hom_basis(f.num_vars(), f.degree());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const S& c = f.coefficient_vector()(static_cast<Eigen::Index>(i));
    if (scalar_is_zero(c)) continue;
    os << ' ' << basis[i][0] << ' ' << basis[i][1];
    if (f.num_vars() == 3) os << ' ' << basis[i][2];
    os << ' ' << ScalarCodec<S>::write(c);
  }
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline int int_token(const std::string& tok, const char* what) {
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": expected an integer, got '" + tok + "'");
  }
}

// "entry <row> <col> <degree> [a b (c) coeff]*" tail -> form
template <class S>
HomForm<S> read_form_terms(const std::vector<std::string>& toks, std::size_t off,
                           int num_vars, int degree, const S& ctx) {
  HomForm<S> f(num_vars, degree);
  const std::size_t stride = static_cast<std::size_t>(num_vars) + 1;
  if ((toks.size() - off) % stride != 0)
    throw ParseError("entry: malformed monomial list");
  for (std::size_t i = off; i < toks.size(); i += stride) {
    int a = int_token(toks[i], "exponent");
    int b = int_token(toks[i + 1], "exponent");
    int c = num_vars == 3 ? int_token(toks[i + 2], "exponent") : 0;
    if (a < 0 || b < 0 || c < 0 || a + b + c != degree)
      throw ParseError("entry: exponents do not sum to the stated degree");
    f.coeff(a, b) = ScalarCodec<S>::read(toks[i + stride - 1], ctx);
  }
  return f;
}

inline std::vector<std::string> body_lines(std::istream& is, const char* head,
                                           const char* expect_head) {
  if (std::string(head) != expect_head)
    throw ParseError(std::string("expected '") + expect_head + "', got '" + head + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "end") return out;
    out.push_back(line);
  }
  throw ParseError(std::string(expect_head) + ": missing 'end'");
}

}  // namespace detail

template <class S>
void write_presentation(std::ostream& os, const SheafPresentation<S>& pres) {
  os << "presentation\n";
  os << "kind " << (pres.kind == PresentationKind::Kernel ? "kernel" : "cokernel") << '\n';
  os << "field " << ScalarCodec<S>::field_tag(detail::field_sample(pres.matrix)) << '\n';
  os << "source";
  for (int t : pres.source.twists) os << ' ' << t;
  os << '\n';
  os << "target";
  for (int t : pres.target.twists) os << ' ' << t;
  os << '\n';
  for (std::size_t i = 0; i < pres.matrix.size(); ++i)
    for (std::size_t j = 0; j < pres.matrix[i].size(); ++j) {
      const auto& e = pres.matrix[i][j];
      if (e.is_zero()) continue;
      os << "entry " << i << ' ' << j << ' ' << e.degree();
      detail::write_form_terms(os, e);
      os << '\n';
    }
  os << "end\n";
}

template <class S>
SheafPresentation<S> read_presentation(std::istream& is) {
  std::string head;
  is >> head;
  is.ignore();
  auto lines = detail::body_lines(is, head.c_str(), "presentation");
  SheafPresentation<S> p;
  S ctx{};
  bool have_kind = false, have_field = false, have_target = false;
  std::vector<std::vector<std::string>> entries;
  for (const auto& line : lines) {
    auto toks = detail::tokens_of(line);
    if (toks[0] == "kind" && toks.size() == 2) {
      if (toks[1] == "kernel")
        p.kind = PresentationKind::Kernel;
      else if (toks[1] == "cokernel")
        p.kind = PresentationKind::Cokernel;
      else
        throw ParseError("kind: '" + toks[1] + "'");
      have_kind = true;
    } else if (toks[0] == "field" && toks.size() == 2) {
      ctx = ScalarCodec<S>::context_from_tag(toks[1]);
      have_field = true;
    } else if (toks[0] == "source") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        p.source.twists.push_back(detail::int_token(toks[i], "source twist"));
    } else if (toks[0] == "target") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        p.target.twists.push_back(detail::int_token(toks[i], "target twist"));
      have_target = true;
    } else if (toks[0] == "entry") {
      entries.push_back(toks);
    } else {
      throw ParseError("presentation: unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_kind || !have_field || !have_target)
    throw ParseError("presentation: kind, field and target are required");
  p.matrix.assign(static_cast<std::size_t>(p.target.count()),
                  std::vector<HomForm<S>>(static_cast<std::size_t>(p.source.count()),
                                          HomForm<S>(3, 0)));
  for (const auto& toks : entries) {
    if (toks.size() < 4) throw ParseError("entry: needs row, column and degree");
    int i = detail::int_token(toks[1], "entry row");
    int j = detail::int_token(toks[2], "entry column");
    int deg = detail::int_token(toks[3], "entry degree");
    if (i < 0 || i >= p.target.count() || j < 0 || j >= p.source.count())
      throw ParseError("entry: index out of range");
    p.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        detail::read_form_terms<S>(toks, 4, 3, deg, ctx);
  }
  p.validate();
  return p;
}

template <class S>
void write_curve(std::ostream& os, const RationalCurveMap<S>& s) {
  os << "curve " << s.degree << '\n';
  os << "field "
     << ScalarCodec<S>::field_tag(detail::field_sample<S>({{s.x, s.y, s.z}})) << '\n';
  const char* names[3] = {"x", "y", "z"};
  const HomForm<S>* forms[3] = {&s.x, &s.y, &s.z};
  for (int k = 0; k < 3; ++k) {
    os << names[k];
    // dense coefficient vector in monomial order s^d .. t^d; zero forms
    // may carry a different recorded degree
    const bool zero = forms[k]->is_zero();
    for (int i = 0; i <= s.degree; ++i)
      os << ' '
         << ScalarCodec<S>::write(zero ? S{} : forms[k]->coeff(s.degree - i, i));
    os << '\n';
  }
  os << "end\n";
}

template <class S>
RationalCurveMap<S> read_curve(std::istream& is) {
  std::string head, deg_tok;
  is >> head >> deg_tok;
  is.ignore();
  auto lines = detail::body_lines(is, head.c_str(), "curve");
  RationalCurveMap<S> s;
  s.degree = detail::int_token(deg_tok, "curve degree");
  s.x = s.y = s.z = HomForm<S>(2, s.degree);
  S ctx{};
  bool have_field = false;
  bool seen[3] = {false, false, false};
  for (const auto& line : lines) {
    auto toks = detail::tokens_of(line);
    if (toks[0] == "field" && toks.size() == 2) {
      ctx = ScalarCodec<S>::context_from_tag(toks[1]);
      have_field = true;
      continue;
    }
    int k = toks[0] == "x" ? 0 : toks[0] == "y" ? 1 : toks[0] == "z" ? 2 : -1;
    if (k < 0) throw ParseError("curve: unknown directive '" + toks[0] + "'");
    if (!have_field) throw ParseError("curve: field must precede coefficients");
    if (static_cast<int>(toks.size()) != s.degree + 2)
      throw ParseError("curve: coefficient count must be degree + 1");
    HomForm<S>* f = k == 0 ? &s.x : k == 1 ? &s.y : &s.z;
    for (int i = 0; i <= s.degree; ++i)
      f->coeff(s.degree - i, i) = ScalarCodec<S>::read(toks[static_cast<std::size_t>(i) + 1], ctx);
    seen[k] = true;
  }
  if (!seen[0] || !seen[1] || !seen[2])
    throw ParseError("curve: x, y and z rows are all required");
  s.validate();
  return s;
}

// Audit-log form for certificates and minor tables: same entry syntax,
// no twist data.
template <class S>
void write_form_matrix(std::ostream& os, const FormMatrix<S>& m) {
  os << "forms " << m.size() << ' ' << (m.empty() ? 0 : m[0].size()) << '\n';
  std::vector<std::vector<HomForm<S>>> as_rows(m.begin(), m.end());
  os << "field " << ScalarCodec<S>::field_tag(detail::field_sample(as_rows)) << '\n';
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j].is_zero()) continue;
      os << "entry " << i << ' ' << j << ' ' << m[i][j].degree();
      detail::write_form_terms(os, m[i][j]);
      os << '\n';
    }
  os << "end\n";
}

template <class S>
FormMatrix<S> read_form_matrix(std::istream& is) {
  std::string head, rows_tok, cols_tok;
  is >> head >> rows_tok >> cols_tok;
  is.ignore();
  auto lines = detail::body_lines(is, head.c_str(), "forms");
  const int rows = detail::int_token(rows_tok, "forms rows");
  const int cols = detail::int_token(cols_tok, "forms cols");
  FormMatrix<S> m(static_cast<std::size_t>(rows),
                  std::vector<HomForm<S>>(static_cast<std::size_t>(cols), HomForm<S>(3, 0)));
  S ctx{};
  for (const auto& line : lines) {
    auto toks = detail::tokens_of(line);
    if (toks[0] == "field" && toks.size() == 2) {
      ctx = ScalarCodec<S>::context_from_tag(toks[1]);
    } else if (toks[0] == "entry" && toks.size() >= 4) {
      int i = detail::int_token(toks[1], "entry row");
      int j = detail::int_token(toks[2], "entry column");
      int deg = detail::int_token(toks[3], "entry degree");
      if (i < 0 || i >= rows || j < 0 || j >= cols)
        throw ParseError("entry: index out of range");
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          detail::read_form_terms<S>(toks, 4, 3, deg, ctx);
    } else {
      throw ParseError("forms: unknown directive '" + toks[0] + "'");
    }
  }
  return m;
}

template <class S>
std::string to_text(const SheafPresentation<S>& pres) {
  std::ostringstream os;
  write_presentation(os, pres);
  return os.str();
}

template <class S>
std::string to_text(const RationalCurveMap<S>& s) {
  std::ostringstream os;
  write_curve(os, s);
  return os.str();
}

template <class S>
SheafPresentation<S> presentation_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_presentation<S>(is);
}

template <class S>
RationalCurveMap<S> curve_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_curve<S>(is);
}

}  // namespace jumplab
