#pragma once

// Closed-form numeric bounds for rank-2 bundles on P^2 and the general
// codimension inequalities, plus a randomized checker for the blowup
// arithmetic behind the relative-canonical bound.  Values are exact
// rationals wherever the formula is rational; square roots carry an
// exact radicand next to the double approximation.

#include "jumplab/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jumplab {

struct BoundDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// sqrt of an exact rational: exact value when the radicand is a perfect
// square, double approximation always.
struct SqrtValue {
  Rational radicand;
  double approx = 0.0;
  std::optional<Rational> exact;

  static SqrtValue of(const Rational& r) {
    if (r < 0) throw BoundDomainError("SqrtValue: negative radicand");
    SqrtValue out;
    out.radicand = r;
    out.approx = std::sqrt(static_cast<double>(r));
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn == num && sd * sd == den) out.exact = Rational(sn, sd);
    return out;
  }

  friend bool operator==(const SqrtValue& a, const Rational& r) {
    return a.exact && *a.exact == r;
  }
};

// sqrt(1 - Delta / (4 (dQ - e/2)^2 + Delta)); also equal to
// (dQ - e/2) / sqrt(dQ^2 - dQ e + f).
inline SqrtValue p2_relcanonical_bound(int dq, int e, int f) {
  const int delta = 4 * f - e * e;
  if (delta < 0)
    throw BoundDomainError("p2_relcanonical_bound: Bogomolov violated (Delta < 0)");
  Rational slope_gap = Rational(dq) - Rational(e, 2);
  if (slope_gap <= 0)
    throw BoundDomainError("p2_relcanonical_bound: dQ must exceed e/2");
  Rational radicand = 1 - Rational(delta) / (4 * slope_gap * slope_gap + delta);
  return SqrtValue::of(radicand);
}

// equivalent closed form, kept as an independent route for cross-checks
inline double p2_relcanonical_bound_alt(int dq, int e, int f) {
  double gap = dq - e / 2.0;
  return gap / std::sqrt(static_cast<double>(dq) * dq -
                         static_cast<double>(dq) * e + f);
}

// infimum of the bound over integers dQ > e/2; the bound is strictly
// increasing in dQ, so it is attained at the smallest admissible integer.
inline SqrtValue zeta_prime(int e, int f) {
  if (4 * f - e * e < 0) throw BoundDomainError("zeta_prime: Delta < 0");
  int dq = e >= 0 ? e / 2 + 1 : -((-e + 1) / 2) + 1;  // floor(e/2) + 1
  return p2_relcanonical_bound(dq, e, f);
}

// sup{2 mu - 1, 0}
inline Rational expected_codim_rank2(const Rational& mu) {
  if (mu < 0) throw BoundDomainError("expected_codim_rank2: mu >= 0");
  Rational v = 2 * mu - 1;
  return v > 0 ? v : Rational(0);
}

// 2 (k-1) mu / ((rank-1) k) - 1
inline Rational gm_codim_bound(const Rational& mu, int rank, int k) {
  if (k < 2) throw BoundDomainError("gm_codim_bound: k >= 2");
  if (rank < 2) throw BoundDomainError("gm_codim_bound: rank >= 2");
  return Rational(2) * (k - 1) * mu / (Rational(rank - 1) * k) - 1;
}

struct TangentGapBounds {
  Rational weak;
  Rational strong;
};

// gamma = g (dimX - 1) + 1; weak: mu / ((gamma+1)(rank-1)) - gamma;
// strong: 2 mu / ((2 gamma + 1)(rank-1)) - (2 gamma^2 + gamma - 1)/(2 gamma + 1)
inline TangentGapBounds tangentgaps_bound(const Rational& mu, int rank, int g, int dimx) {
  if (rank < 2) throw BoundDomainError("tangentgaps_bound: rank >= 2");
  const int gamma = g * (dimx - 1) + 1;
  TangentGapBounds out;
  out.weak = mu / (Rational(gamma + 1) * (rank - 1)) - gamma;
  out.strong = Rational(2) * mu / (Rational(2 * gamma + 1) * (rank - 1)) -
               Rational(2 * gamma * gamma + gamma - 1, 2 * gamma + 1);
  return out;
}

struct ModuliDimBounds {
  int lower;
  int upper;
};

// Kdeg + (dimX - 3)(1 - g) <= dim M <= Kdeg + dimX + 2 g - 3
inline ModuliDimBounds moduli_dim_bounds(int kdeg, int g, int dimx) {
  return {kdeg + (dimx - 3) * (1 - g), kdeg + dimx + 2 * g - 3};
}

struct GoodBoundsInputs {
  Rational mu;
  int k = 2;
  int e = 0;
  int f = 0;
  int d = 1;
  int g = 0;
};

// case 1: 2(k-1)/k mu - 1; case 2: zeta' d; case 3: d - g
inline double goodbounds_verdict(int which_case, const GoodBoundsInputs& in) {
  switch (which_case) {
    case 1:
      return static_cast<double>(Rational(2) * (in.k - 1) * in.mu / in.k - 1);
    case 2:
      return zeta_prime(in.e, in.f).approx * in.d;
    case 3:
      return static_cast<double>(in.d - in.g);
    default:
      throw BoundDomainError("goodbounds_verdict: case must be 1, 2 or 3");
  }
}

// min{ 2 mu/(2g+3) - (g+1), d zeta - g }
inline double remark_general_bound(const Rational& mu, int g, int d, double zeta) {
  if (g < 0) throw BoundDomainError("remark_general_bound: g >= 0");
  double a = static_cast<double>(Rational(2) * mu / (2 * g + 3) - (g + 1));
  double b = d * zeta - g;
  return std::min(a, b);
}

// a * dimM + sup{g - 1, 0}
inline Rational disconnected_dim_bound(const Rational& a_value, int dim_m, int g) {
  if (g < 0) throw BoundDomainError("disconnected_dim_bound: g >= 0");
  return a_value * dim_m + std::max(g - 1, 0);
}

// (2/3) dimM + g
inline Rational genfinite_dim_bound(int dim_m, int g) {
  if (g < 0) throw BoundDomainError("genfinite_dim_bound: g >= 0");
  return Rational(2, 3) * dim_m + g;
}

struct BlowupModel {
  std::vector<Rational> a;  // alpha' = phi^* H - sum a_i E_i, a_i >= 0
  std::vector<long long> b; // c1(Q') = phi^* c1(Q) - sum b_i E_i, b_i >= 0
  int dq = 0;
  int e = 0;
  int f = 0;
};

struct InfeasibleModel : std::domain_error {
  using std::domain_error::domain_error;
};

// Verifies sum a_i >= (dQ - e/2) / sqrt(dQ^2 - dQ e + f) for a feasible
// model, exactly, via (sum a)^2 (sum b^2) >= (dQ - e/2)^2.  Returning
// false indicates an implementation or hypothesis bug; used as a
// randomized property harness.
inline bool blowup_model_check(const BlowupModel& m) {
  if (m.a.size() != m.b.size())
    throw InfeasibleModel("blowup_model_check: a and b length mismatch");
  Rational sum_a = 0, sum_ab = 0;
  long long sum_b2 = 0;
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    if (m.a[i] < 0 || m.b[i] < 0)
      throw InfeasibleModel("blowup_model_check: negative coefficient");
    sum_a += m.a[i];
    sum_ab += m.a[i] * m.b[i];
    sum_b2 += m.b[i] * m.b[i];
  }
  const long long chern_b2 =
      static_cast<long long>(m.dq) * m.dq - static_cast<long long>(m.dq) * m.e + m.f;
  if (sum_b2 != chern_b2)
    throw InfeasibleModel("blowup_model_check: sum b_i^2 != dQ^2 - dQ e + f");
  Rational slope_gap = Rational(m.dq) - Rational(m.e, 2);
  if (sum_ab < slope_gap)
    throw InfeasibleModel("blowup_model_check: slope condition violated");
  if (sum_b2 == 0) return slope_gap <= 0;
  return sum_a * sum_a * sum_b2 >= slope_gap * slope_gap;
}

}  // namespace jumplab
