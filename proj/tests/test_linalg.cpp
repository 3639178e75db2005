#include <doctest.h>

#include <jumplab/linalg.hpp>

#include "oracles.hpp"

using namespace jumplab;
using testing::Rng;

TEST_CASE("rank: identity and simple cases") {
  MatrixX<Fp> id = MatrixX<Fp>::Zero(2, 2);
  id(0, 0) = Fp(1, 101);
  id(1, 1) = Fp(1, 101);
  CHECK(rank(id) == 2);

  MatrixX<Fp> row(1, 2);
  row(0, 0) = Fp(1, 101);
  row(0, 1) = Fp(1, 101);
  CHECK(rank(row) == 1);
}

TEST_CASE("rank matches fraction-free elimination oracle on 1000 samples") {
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    MatrixX<Fp> m = rng.matrix(10, 10, 101);
    // occasionally force rank deficiency
    if (trial % 3 == 0) m.row(7) = m.row(2) + m.row(3);
    std::vector<std::vector<std::int64_t>> raw(10, std::vector<std::int64_t>(10));
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 10; ++c)
        raw[(std::size_t)r][(std::size_t)c] = (std::int64_t)m(r, c).value();
    CHECK(rank(m) == testing::bareiss_rank_fp(raw, 101));
  }
}

TEST_CASE("kernel_basis: hand cases") {
  MatrixX<Fp> row(1, 2);
  row(0, 0) = Fp(1, 101);
  row(0, 1) = Fp(1, 101);
  MatrixX<Fp> k = kernel_basis(row);
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) + k(1, 0) == Fp(0, 101));
  CHECK(!k(0, 0).is_zero());

  MatrixX<Fp> id = MatrixX<Fp>::Zero(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = Fp(1, 101);
  CHECK(kernel_basis(id).cols() == 0);
}

TEST_CASE("kernel_basis: M*K == 0 and dimension count, random 8x12") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    MatrixX<Fp> m = rng.matrix(8, 12, 101);
    MatrixX<Fp> k = kernel_basis(m);
    CHECK(k.cols() == 12 - rank(m));
    MatrixX<Fp> prod = m * k;
    for (Eigen::Index r = 0; r < prod.rows(); ++r)
      for (Eigen::Index c = 0; c < prod.cols(); ++c)
        CHECK(prod(r, c).is_zero());
    CHECK(rank(k) == k.cols());
  }
}

TEST_CASE("rank-nullity holds exactly") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index rows = 1 + (Eigen::Index)(rng.next_u64() % 9);
    Eigen::Index cols = 1 + (Eigen::Index)(rng.next_u64() % 9);
    MatrixX<Fp> m = rng.matrix(rows, cols, 32003);
    CHECK(rank(m) + kernel_basis(m).cols() == cols);
  }
}

TEST_CASE("determinant over rationals") {
  MatrixX<Rational> m(2, 2);
  m(0, 0) = Rational(1, 2);
  m(0, 1) = Rational(1, 3);
  m(1, 0) = Rational(1, 4);
  m(1, 1) = Rational(1, 5);
  CHECK(determinant(m) == Rational(1, 10) - Rational(1, 12));
  MatrixX<Rational> sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  CHECK(determinant(sing) == 0);
}
