#include <doctest.h>

#include <jumplab/bounds.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace jumplab;
using testing::Rng;

TEST_CASE("p2_relcanonical_bound: frozen values") {
  auto b = p2_relcanonical_bound(2, 3, 3);
  REQUIRE(b.exact.has_value());
  CHECK(*b.exact == Rational(1, 2));

  auto trivial = p2_relcanonical_bound(1, 0, 0);  // Delta = 0
  REQUIRE(trivial.exact.has_value());
  CHECK(*trivial.exact == 1);

  auto irr = p2_relcanonical_bound(1, 0, 1);  // sqrt(1/2)
  CHECK(!irr.exact.has_value());
  CHECK(irr.radicand == Rational(1, 2));
  CHECK(irr.approx == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  CHECK_THROWS_AS(p2_relcanonical_bound(3, 4, 1), BoundDomainError);  // Delta < 0
  CHECK_THROWS_AS(p2_relcanonical_bound(1, 2, 2), BoundDomainError);  // dQ = e/2
}

TEST_CASE("p2_relcanonical_bound: the two closed forms agree") {
  Rng rng(101);
  int checked = 0;
  while (checked < 10000) {
    int e = (int)(rng.next_u64() % 21) - 10;
    int f = (int)(rng.next_u64() % 40);
    if (4 * f - e * e < 0) continue;
    int dq = e / 2 + 1 + (int)(rng.next_u64() % 12);
    if (2 * dq <= e) continue;
    auto b = p2_relcanonical_bound(dq, e, f);
    double alt = p2_relcanonical_bound_alt(dq, e, f);
    CHECK(b.approx == doctest::Approx(alt).epsilon(1e-12));
    // value in (0, 1]
    CHECK(b.radicand > 0);
    CHECK(b.radicand <= 1);
    ++checked;
  }
}

TEST_CASE("p2_relcanonical_bound: strictly increasing in dQ, so zeta_prime is the minimum") {
  Rng rng(102);
  int checked = 0;
  while (checked < 2000) {
    int e = (int)(rng.next_u64() % 15) - 7;
    int f = (int)(rng.next_u64() % 30);
    if (4 * f - e * e <= 0) continue;  // Delta > 0 for strictness
    int dq0 = (e >= 0 ? e / 2 : -((-e + 1) / 2)) + 1;
    Rational prev = -1;
    for (int dq = dq0; dq < dq0 + 6; ++dq) {
      auto b = p2_relcanonical_bound(dq, e, f);
      CHECK(b.radicand > prev);
      prev = b.radicand;
      CHECK(zeta_prime(e, f).radicand <= b.radicand);
    }
    ++checked;
  }
}

TEST_CASE("zeta_prime: frozen values") {
  CHECK(zeta_prime(3, 3) == Rational(1, 2));
  CHECK(zeta_prime(0, 0) == Rational(1));
  auto z = zeta_prime(0, 1);
  CHECK(!z.exact.has_value());
  CHECK(z.radicand == Rational(1, 2));
  CHECK_THROWS_AS(zeta_prime(1, 0), BoundDomainError);
}

TEST_CASE("expected_codim_rank2: breakpoint at 1/2") {
  CHECK(expected_codim_rank2(0) == 0);
  CHECK(expected_codim_rank2(Rational(1, 2)) == 0);
  CHECK(expected_codim_rank2(1) == 1);
  CHECK_THROWS_AS(expected_codim_rank2(Rational(-1, 3)), BoundDomainError);
  Rng rng(103);
  Rational prev_mu = 0, prev_val = 0;
  for (int i = 0; i < 10000; ++i) {
    Rational mu = Rational((long long)(rng.next_u64() % 400), 1 + (long long)(rng.next_u64() % 7));
    Rational v = expected_codim_rank2(mu);
    CHECK(v >= 0);
    if (mu <= Rational(1, 2)) CHECK(v == 0);
    if (mu > Rational(1, 2)) CHECK(v == 2 * mu - 1);
    if (mu >= prev_mu) CHECK(v >= prev_val);
    prev_mu = mu;
    prev_val = v;
  }
}

TEST_CASE("gm_codim_bound: frozen values") {
  CHECK(gm_codim_bound(3, 2, 2) == 2);
  CHECK(gm_codim_bound(3, 2, 3) == 3);
  // k = 2, rank 2 gives mu - 1
  CHECK(gm_codim_bound(Rational(7, 2), 2, 2) == Rational(5, 2));
  CHECK_THROWS_AS(gm_codim_bound(1, 2, 1), BoundDomainError);
  CHECK_THROWS_AS(gm_codim_bound(1, 1, 2), BoundDomainError);
}

TEST_CASE("tangentgaps_bound: genus-0 surface case and strong >= weak") {
  auto t = tangentgaps_bound(6, 2, 0, 2);  // gamma = 1
  CHECK(t.weak == 2);                      // 6/2 - 1
  CHECK(t.strong == Rational(10, 3));      // 12/3 - 2/3
  auto v = tangentgaps_bound(0, 2, 0, 2);
  CHECK(v.weak < 0);
  CHECK(v.strong < 0);
  Rng rng(104);
  for (int i = 0; i < 10000; ++i) {
    Rational mu = Rational((long long)(rng.next_u64() % 200), 1 + (long long)(rng.next_u64() % 5));
    int rank = 2 + (int)(rng.next_u64() % 4);
    int g = (int)(rng.next_u64() % 4);
    int dimx = 2 + (int)(rng.next_u64() % 3);
    auto b = tangentgaps_bound(mu, rank, g, dimx);
    CHECK(b.strong >= b.weak);
  }
}

TEST_CASE("moduli_dim_bounds: frozen values and ordering") {
  auto p2conic = moduli_dim_bounds(6, 0, 2);
  CHECK(p2conic.lower == 5);
  CHECK(p2conic.upper == 5);
  auto g1 = moduli_dim_bounds(10, 1, 3);
  CHECK(g1.lower == 10);
  CHECK(g1.upper == 12);
  Rng rng(105);
  for (int i = 0; i < 10000; ++i) {
    int kdeg = (int)(rng.next_u64() % 60) - 10;
    int g = (int)(rng.next_u64() % 6);
    int dimx = 1 + (int)(rng.next_u64() % 5);
    auto b = moduli_dim_bounds(kdeg, g, dimx);
    CHECK(b.lower <= b.upper);  // difference is g (dimX - 1) >= 0
  }
}

TEST_CASE("goodbounds_verdict: three cases") {
  GoodBoundsInputs in1;
  in1.k = 2;
  in1.mu = 2;
  CHECK(goodbounds_verdict(1, in1) == 1.0);

  GoodBoundsInputs in2;
  in2.e = 3;
  in2.f = 3;
  in2.d = 10;
  CHECK(goodbounds_verdict(2, in2) == 5.0);

  GoodBoundsInputs in3;
  in3.d = 7;
  in3.g = 1;
  CHECK(goodbounds_verdict(3, in3) == 6.0);

  CHECK_THROWS_AS(goodbounds_verdict(4, in1), BoundDomainError);
}

TEST_CASE("general-version, disconnected-fiber, and generically-finite bounds") {
  CHECK(remark_general_bound(6, 0, 10, 0.5) == 3.0);  // min{3, 5}
  CHECK(disconnected_dim_bound(Rational(2, 3), 9, 0) == 6);
  CHECK(disconnected_dim_bound(Rational(2, 3), 9, 3) == 8);
  CHECK(genfinite_dim_bound(3 * 7 + 1 - 1, 1) == 15);
  CHECK_THROWS_AS(remark_general_bound(1, -1, 1, 0.5), BoundDomainError);
}

TEST_CASE("blowup_model_check: single blowup and scaling") {
  BlowupModel m;
  m.a = {Rational(1)};
  m.b = {1};
  m.dq = 2;
  m.e = 3;
  m.f = 3;
  CHECK(blowup_model_check(m));

  BlowupModel bad = m;
  bad.b = {2};  // breaks the Chern identity
  CHECK_THROWS_AS(blowup_model_check(bad), InfeasibleModel);

  BlowupModel neg = m;
  neg.a = {Rational(-1)};
  CHECK_THROWS_AS(blowup_model_check(neg), InfeasibleModel);
}

TEST_CASE("blowup_model_check: rejection-sampled feasible models are always true") {
  Rng rng(106);
  int accepted = 0;
  long long attempts = 0;
  while (accepted < 100000 && attempts < 30000000) {
    ++attempts;
    BlowupModel m;
    int n = 1 + (int)(rng.next_u64() % 5);
    long long sum_b2 = 0;
    for (int i = 0; i < n; ++i) {
      long long bi = (long long)(rng.next_u64() % 4);
      m.b.push_back(bi);
      sum_b2 += bi * bi;
    }
    if (sum_b2 == 0) continue;
    // pick Chern data matching sum b^2 = dQ^2 - dQ e + f with Delta >= 0
    m.e = (int)(rng.next_u64() % 9) - 4;
    m.dq = m.e / 2 + 1 + (int)(rng.next_u64() % 5);
    if (2 * m.dq <= m.e) continue;
    long long f = sum_b2 - (long long)m.dq * m.dq + (long long)m.dq * m.e;
    if (4 * f - (long long)m.e * m.e < 0) continue;
    m.f = (int)f;
    Rational sum_ab = 0;
    for (int i = 0; i < n; ++i) {
      Rational ai = Rational((long long)(rng.next_u64() % 12), 1 + (long long)(rng.next_u64() % 4));
      m.a.push_back(ai);
      sum_ab += ai * m.b[(std::size_t)i];
    }
    if (sum_ab < Rational(m.dq) - Rational(m.e, 2)) continue;
    CHECK(blowup_model_check(m));
    ++accepted;
  }
  CHECK(accepted == 100000);
}
