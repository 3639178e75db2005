#include <doctest.h>

#include <jumplab/serialize.hpp>

#include "oracles.hpp"

using namespace jumplab;
using testing::Rng;

TEST_CASE("presentation round-trip: named constructors over F_101") {
  for (const auto& pres :
       {euler_tangent<Fp>(), conic_example_bundle<Fp>(2), schwarzenberger<Fp>(4, 0),
        line_bundle_sum<Fp>({3, 0, -2})}) {
    // stamp a modulus on the coefficients by re-reading with field 0 first
    std::string text = to_text(pres);
    auto back = presentation_from_text<Fp>(text);
    CHECK(to_text(back) == text);
    CHECK(back.kind == pres.kind);
    CHECK(back.source.twists == pres.source.twists);
    CHECK(back.target.twists == pres.target.twists);
    for (std::size_t i = 0; i < pres.matrix.size(); ++i)
      for (std::size_t j = 0; j < pres.matrix[i].size(); ++j)
        CHECK(back.matrix[i][j] == pres.matrix[i][j]);
  }
}

TEST_CASE("presentation round-trip: random F_101 matrices") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    SheafPresentation<Fp> p;
    p.kind = trial % 2 == 0 ? PresentationKind::Kernel : PresentationKind::Cokernel;
    int rows = 1 + (int)(rng.next_u64() % 3);
    int cols = rows + 1 + (int)(rng.next_u64() % 2);
    if (p.kind == PresentationKind::Cokernel) std::swap(rows, cols);
    p.target.twists.assign((std::size_t)rows, 1);
    p.source.twists.assign((std::size_t)cols, 0);
    p.matrix.assign((std::size_t)rows, std::vector<HomForm<Fp>>((std::size_t)cols));
    for (auto& row : p.matrix)
      for (auto& e : row) e = rng.form(3, 1, 101);
    std::string text = to_text(p);
    auto back = presentation_from_text<Fp>(text);
    CHECK(to_text(back) == text);
    for (std::size_t i = 0; i < p.matrix.size(); ++i)
      for (std::size_t j = 0; j < p.matrix[i].size(); ++j)
        CHECK(back.matrix[i][j] == p.matrix[i][j]);
  }
}

TEST_CASE("presentation round-trip: exact rationals") {
  SheafPresentation<Rational> p;
  p.kind = PresentationKind::Cokernel;
  p.source.twists = {0};
  p.target.twists = {2};
  HomForm<Rational> f(3, 2);
  f.coeff(2, 0) = Rational(22, 7);
  f.coeff(0, 1) = Rational(-5, 3);
  p.matrix = {{f}};
  std::string text = to_text(p);
  CHECK(text.find("22/7") != std::string::npos);
  auto back = presentation_from_text<Rational>(text);
  CHECK(to_text(back) == text);
  CHECK(back.matrix[0][0] == f);
}

TEST_CASE("curve round-trip") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    RationalCurveMap<Fp> s;
    s.degree = 1 + (int)(rng.next_u64() % 4);
    s.x = rng.form(2, s.degree, 101);
    s.y = rng.form(2, s.degree, 101);
    s.z = rng.form(2, s.degree, 101);
    if (s.x.is_zero() && s.y.is_zero() && s.z.is_zero()) continue;
    std::string text = to_text(s);
    auto back = curve_from_text<Fp>(text);
    CHECK(to_text(back) == text);
    CHECK(back.degree == s.degree);
    CHECK(back.x == s.x);
    CHECK(back.y == s.y);
    CHECK(back.z == s.z);
  }
}

TEST_CASE("form matrix audit round-trip") {
  Rng rng(23);
  FormMatrix<Fp> m(2, std::vector<HomForm<Fp>>(4));
  for (auto& row : m)
    for (auto& e : row) e = rng.form(3, 1, 101);
  std::ostringstream os;
  write_form_matrix(os, m);
  std::istringstream is(os.str());
  auto back = read_form_matrix<Fp>(is);
  std::ostringstream os2;
  write_form_matrix(os2, back);
  CHECK(os2.str() == os.str());
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(presentation_from_text<Fp>("presentation\nend\n"), ParseError);
  CHECK_THROWS_AS(presentation_from_text<Fp>(
                      "presentation\nkind sideways\nfield 7\ntarget 0\nend\n"),
                  ParseError);
  CHECK_THROWS_AS(presentation_from_text<Fp>(
                      "presentation\nkind kernel\nfield 7\ntarget 0\n"),
                  ParseError);  // missing end
  CHECK_THROWS_AS(presentation_from_text<Fp>("presentation\nkind kernel\nfield 7\n"
                                             "source 0\ntarget 0\nentry 3 0 1 1 0 0 1\nend\n"),
                  ParseError);  // row out of range
  CHECK_THROWS_AS(presentation_from_text<Rational>(
                      "presentation\nkind kernel\nfield 7\ntarget 0\nend\n"),
                  ParseError);  // wrong field tag for the scalar
  CHECK_THROWS_AS(curve_from_text<Fp>("curve 1\nfield 7\nx 1 0\ny 0 1\nend\n"),
                  ParseError);  // missing z
  // degree mismatch between header and declared entry exponents
  CHECK_THROWS_AS(presentation_from_text<Fp>("presentation\nkind kernel\nfield 7\n"
                                             "source -1\ntarget 0\nentry 0 0 1 2 0 0 1\nend\n"),
                  ParseError);
}

TEST_CASE("serialized curves feed the splitting engine unchanged") {
  // a line, shipped through text, gives the classical tangent splitting
  std::string text =
      "curve 1\n"
      "field 101\n"
      "x 1 0\n"
      "y 0 1\n"
      "z 0 0\n"
      "end\n";
  auto s = curve_from_text<Fp>(text);
  auto rep = jump_report(euler_tangent<Fp>(), s);
  CHECK(rep.splitting.parts == std::vector<int>{2, 1});
}
