#pragma once

// Exact scalar types: prime fields F_p with runtime modulus, and
// arbitrary-precision rationals.  Both plug into Eigen dense types.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jumplab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Element of F_p.  modulus() == 0 marks an integer literal that adopts
// the modulus of the other operand on first contact; this makes
// Scalar(0) / Scalar(1) usable in generic code (Eigen setZero etc.)
// without a global modulus.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long long v) : v_(static_cast<std::uint64_t>(v)), p_(0) {}  // NOLINT: implicit literal
  Fp(long long v, std::uint64_t p) : v_(0), p_(p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    v_ = static_cast<std::uint64_t>(r);
  }

  std::uint64_t value() const { return lit_normalized(); }
  std::int64_t raw() const { return v_as_int(); }
  std::uint64_t modulus() const { return p_; }
  bool is_literal() const { return p_ == 0; }

  bool is_zero() const { return p_ == 0 ? v_ == 0 : v_ % p_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (p == 0) return Fp(static_cast<long long>(x) + static_cast<long long>(y));
    return from_raw((x + y) % p, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (p == 0) return Fp(static_cast<long long>(x) - static_cast<long long>(y));
    return from_raw((x + p - y) % p, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (p == 0) return Fp(static_cast<long long>(x) * static_cast<long long>(y));
    return from_raw(mulmod(x, y, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp operator-() const {
    if (p_ == 0) return Fp(-v_as_int());
    return from_raw((p_ - v_ % p_) % p_, p_);
  }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_as_int() == 1) return Fp(1);
      if (v_as_int() == -1) return Fp(-1);
      throw std::domain_error("Fp: inverse of non-unit literal");
    }
    std::uint64_t a = v_ % p_;
    if (a == 0) throw std::domain_error("Fp: inverse of zero");
    // extended Euclid
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return from_raw(static_cast<std::uint64_t>(t), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    (void)p;
    return x == y;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const {
    return std::to_string(lit_normalized());
  }

 private:
  // literal: v_ holds a signed value reinterpreted; element: v_ in [0,p).
  std::uint64_t v_;
  std::uint64_t p_;

  Fp(std::uint64_t v, std::uint64_t p, int) : v_(v), p_(p) {}
  static Fp from_raw(std::uint64_t v, std::uint64_t p) { return Fp(v, p, 0); }

  std::int64_t v_as_int() const { return static_cast<std::int64_t>(v_); }

  std::uint64_t lit_normalized() const {
    if (p_ != 0) return v_;
    return static_cast<std::uint64_t>(v_as_int());
  }

  std::uint64_t reduced(std::uint64_t p) const {
    if (p_ != 0) return v_;
    std::int64_t r = v_as_int() % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
  }

  struct Aligned {
    std::uint64_t x, y, p;
  };
  static Aligned align(const Fp& a, const Fp& b) {
    std::uint64_t p = a.p_ != 0 ? a.p_ : b.p_;
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw std::domain_error("Fp: mixed moduli");
    if (p == 0) return {a.v_, b.v_, 0};
    return {a.reduced(p), b.reduced(p), p};
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
};

inline Fp abs(const Fp& a) { return a; }  // pivot magnitude is meaningless over F_p

inline std::ostream& operator<<(std::ostream& os, const Fp& a) {
  return os << a.str();
}

// Scalar-generic helpers used by the templated core.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Fp> {
  static bool is_zero(const Fp& a) { return a.is_zero(); }
  static Fp from_int(long long v, const Fp& sample) {
    if (sample.modulus() == 0) return Fp(v);
    return Fp(v, sample.modulus());
  }
  static std::string str(const Fp& a) { return a.str(); }
};

template <>
struct ScalarOps<Rational> {
  static bool is_zero(const Rational& a) { return a == 0; }
  static Rational from_int(long long v, const Rational&) { return Rational(v); }
  static std::string str(const Rational& a) { return a.str(); }
};

template <class S>
bool scalar_is_zero(const S& a) {
  return ScalarOps<S>::is_zero(a);
}

template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

}  // namespace jumplab

namespace Eigen {

template <>
struct NumTraits<jumplab::Fp> {
  using Real = jumplab::Fp;
  using NonInteger = jumplab::Fp;
  using Nested = jumplab::Fp;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 6,
  };
  static inline jumplab::Fp epsilon() { return jumplab::Fp(0); }
  static inline jumplab::Fp dummy_precision() { return jumplab::Fp(0); }
  static inline int digits10() { return 18; }
};

}  // namespace Eigen
