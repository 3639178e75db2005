#pragma once

// Presentations of coherent sheaves on P^2 as kernels or cokernels of
// degree-compatible matrices between sums of line bundles, together with
// Chern data, twisted section counts and a rank-2 stability test.

#include "jumplab/homform.hpp"
#include "jumplab/linalg.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jumplab {

enum class PresentationKind { Kernel, Cokernel };

struct LineBundleSum {
  std::vector<int> twists;

  int count() const { return static_cast<int>(twists.size()); }
  int degree_sum() const {
    return std::accumulate(twists.begin(), twists.end(), 0);
  }
  // elementary symmetric functions of the twists, truncated at degree 2
  int c1() const { return degree_sum(); }
  int c2() const {
    long long e2 = 0;
    for (std::size_t i = 0; i < twists.size(); ++i)
      for (std::size_t j = i + 1; j < twists.size(); ++j)
        e2 += static_cast<long long>(twists[i]) * twists[j];
    return static_cast<int>(e2);
  }
};

struct ChernData {
  int rank = 0;
  int c1 = 0;
  int c2 = 0;
  Rational slope() const { return Rational(c1) / rank; }
  int discriminant() const { return 4 * c2 - c1 * c1; }  // rank 2 only
};

struct MalformedPresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The sheaf is ker(matrix) or coker(matrix) of
//   matrix : (+) O(source_j)  ->  (+) O(target_i),
// entry (i,j) a form of degree target[i] - source[j].
template <class S>
struct SheafPresentation {
  PresentationKind kind = PresentationKind::Cokernel;
  LineBundleSum source;
  LineBundleSum target;
  std::vector<std::vector<HomForm<S>>> matrix;  // [target rows][source cols]

  void validate() const {
    if (matrix.size() != static_cast<std::size_t>(target.count()))
      throw MalformedPresentation("presentation: row count mismatch");
    for (int i = 0; i < target.count(); ++i) {
      const auto& row = matrix[static_cast<std::size_t>(i)];
      if (row.size() != static_cast<std::size_t>(source.count()))
        throw MalformedPresentation("presentation: column count mismatch");
      for (int j = 0; j < source.count(); ++j) {
        const auto& entry = row[static_cast<std::size_t>(j)];
        const int want = target.twists[static_cast<std::size_t>(i)] -
                         source.twists[static_cast<std::size_t>(j)];
        if (entry.is_zero()) continue;
        if (entry.num_vars() != 3 || entry.degree() != want)
          throw MalformedPresentation("presentation: entry degree mismatch");
      }
    }
  }
};

template <class S>
ChernData chern(const SheafPresentation<S>& pres) {
  const LineBundleSum& src = pres.source;
  const LineBundleSum& tgt = pres.target;
  ChernData out;
  if (pres.kind == PresentationKind::Kernel) {
    // 0 -> E -> S -> T -> 0: c(E) = c(S)/c(T) truncated at degree 2
    out.rank = src.count() - tgt.count();
    out.c1 = src.c1() - tgt.c1();
    out.c2 = src.c2() - tgt.c2() - tgt.c1() * out.c1;
  } else {
    // 0 -> S -> T -> Q -> 0: c(Q) = c(T)/c(S)
    out.rank = tgt.count() - src.count();
    out.c1 = tgt.c1() - src.c1();
    out.c2 = tgt.c2() - src.c2() - src.c1() * out.c1;
  }
  if (out.rank <= 0) throw MalformedPresentation("chern: non-positive rank");
  return out;
}

namespace detail {

// The map (+)_j H^0(O(source_j + m)) -> (+)_i H^0(O(target_i + m))
// induced by the presentation matrix on P^2.
template <class S>
MatrixX<S> section_map_p2(const SheafPresentation<S>& pres, int m) {
  std::vector<Eigen::Index> row_off(static_cast<std::size_t>(pres.target.count()) + 1, 0);
  std::vector<Eigen::Index> col_off(static_cast<std::size_t>(pres.source.count()) + 1, 0);
  for (int i = 0; i < pres.target.count(); ++i)
    row_off[static_cast<std::size_t>(i) + 1] =
        row_off[static_cast<std::size_t>(i)] +
        hom_basis_size(3, pres.target.twists[static_cast<std::size_t>(i)] + m);
  for (int j = 0; j < pres.source.count(); ++j)
    col_off[static_cast<std::size_t>(j) + 1] =
        col_off[static_cast<std::size_t>(j)] +
        hom_basis_size(3, pres.source.twists[static_cast<std::size_t>(j)] + m);
  MatrixX<S> big = MatrixX<S>::Zero(row_off.back(), col_off.back());
  for (int i = 0; i < pres.target.count(); ++i) {
    for (int j = 0; j < pres.source.count(); ++j) {
      const auto& entry = pres.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const int n = pres.source.twists[static_cast<std::size_t>(j)] + m;
      if (entry.is_zero() || n < 0) continue;
      MatrixX<S> block = multiplication_matrix_p2(entry, n);
      if (block.rows() == 0 || block.cols() == 0) continue;
      big.block(row_off[static_cast<std::size_t>(i)], col_off[static_cast<std::size_t>(j)],
                block.rows(), block.cols()) = block;
    }
  }
  return big;
}

}  // namespace detail

// dim H^0 of the presented sheaf twisted by m.  Exact on P^2: global
// sections are left exact for the kernel kind, and every line bundle on
// P^2 has vanishing H^1, making the cokernel count exact as well.
template <class S>
int h0_twist(const SheafPresentation<S>& pres, int m) {
  MatrixX<S> map = detail::section_map_p2(pres, m);
  Eigen::Index r = rank(map);
  if (pres.kind == PresentationKind::Kernel)
    return static_cast<int>(map.cols() - r);
  return static_cast<int>(map.rows() - r);
}

// Hoppe's criterion, complete for rank 2 on P^2: stable iff the
// normalized twist has no sections.
template <class S>
bool is_stable_rank2(const SheafPresentation<S>& pres) {
  ChernData cd = chern(pres);
  if (cd.rank != 2) throw MalformedPresentation("is_stable_rank2: rank != 2");
  // unique k with c1 + 2k in {0, -1}
  int k = cd.c1 % 2 == 0 ? -cd.c1 / 2 : (-1 - cd.c1) / 2;
  return h0_twist(pres, k) == 0;
}

template <class S>
SheafPresentation<S> twist(SheafPresentation<S> pres, int k) {
  for (auto& t : pres.source.twists) t += k;
  for (auto& t : pres.target.twists) t += k;
  return pres;
}

template <class S>
SheafPresentation<S> dual(const SheafPresentation<S>& pres) {
  SheafPresentation<S> out;
  out.kind = pres.kind == PresentationKind::Kernel ? PresentationKind::Cokernel
                                                   : PresentationKind::Kernel;
  for (int t : pres.target.twists) out.source.twists.push_back(-t);
  for (int s : pres.source.twists) out.target.twists.push_back(-s);
  out.matrix.assign(static_cast<std::size_t>(pres.source.count()),
                    std::vector<HomForm<S>>(static_cast<std::size_t>(pres.target.count())));
  for (int i = 0; i < pres.target.count(); ++i)
    for (int j = 0; j < pres.source.count(); ++j)
      out.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          pres.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

// --- named constructors ------------------------------------------------

// Euler sequence 0 -> O -> O(1)^3 -> T_{P^2} -> 0.
template <class S>
SheafPresentation<S> euler_tangent() {
  SheafPresentation<S> p;
  p.kind = PresentationKind::Cokernel;
  p.source.twists = {0};
  p.target.twists = {1, 1, 1};
  S one = ScalarOps<S>::from_int(1, S{});
  p.matrix = {{HomForm<S>::monomial(3, 1, 0, 0, one)},
              {HomForm<S>::monomial(3, 0, 1, 0, one)},
              {HomForm<S>::monomial(3, 0, 0, 1, one)}};
  return p;
}

// ker( (x^d, y^d, z^{2d-1}) : O(-d)^2 (+) O(-2d+1) -> O ).
template <class S>
SheafPresentation<S> conic_example_bundle(int d) {
  if (d < 1) throw std::invalid_argument("conic_example_bundle: d >= 1");
  SheafPresentation<S> p;
  p.kind = PresentationKind::Kernel;
  p.source.twists = {-d, -d, -2 * d + 1};
  p.target.twists = {0};
  S one = ScalarOps<S>::from_int(1, S{});
  p.matrix = {{HomForm<S>::monomial(3, d, 0, 0, one),
               HomForm<S>::monomial(3, 0, d, 0, one),
               HomForm<S>::monomial(3, 0, 0, 2 * d - 1, one)}};
  return p;
}

// coker of the banded matrix of linear forms realizing
// 0 -> O(q-1)^{p-q-1} -> O(q)^{p-q+1} -> E_{p,q} -> 0,
// with column j carrying x, y, z in rows j, j+1, j+2.
template <class S>
SheafPresentation<S> schwarzenberger(int p, int q) {
  if (p < q + 2) throw std::invalid_argument("schwarzenberger: requires p >= q + 2");
  SheafPresentation<S> out;
  out.kind = PresentationKind::Cokernel;
  const int cols = p - q - 1;
  const int rows = p - q + 1;
  out.source.twists.assign(static_cast<std::size_t>(cols), q - 1);
  out.target.twists.assign(static_cast<std::size_t>(rows), q);
  out.matrix.assign(static_cast<std::size_t>(rows),
                    std::vector<HomForm<S>>(static_cast<std::size_t>(cols),
                                            HomForm<S>(3, 1)));
  S one = ScalarOps<S>::from_int(1, S{});
  for (int j = 0; j < cols; ++j) {
    out.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
        HomForm<S>::monomial(3, 1, 0, 0, one);
    out.matrix[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j)] =
        HomForm<S>::monomial(3, 0, 1, 0, one);
    out.matrix[static_cast<std::size_t>(j + 2)][static_cast<std::size_t>(j)] =
        HomForm<S>::monomial(3, 0, 0, 1, one);
  }
  return out;
}

// ker of a 1-row matrix of forms with the given source twists into O.
template <class S>
SheafPresentation<S> kernel_of_forms(std::vector<HomForm<S>> forms,
                                     std::vector<int> twists) {
  if (forms.size() != twists.size() || forms.empty())
    throw std::invalid_argument("kernel_of_forms: shape mismatch");
  SheafPresentation<S> p;
  p.kind = PresentationKind::Kernel;
  p.source.twists = std::move(twists);
  p.target.twists = {0};
  p.matrix = {std::move(forms)};
  p.validate();
  return p;
}

// direct sum of line bundles as a cokernel of the empty map
template <class S>
SheafPresentation<S> line_bundle_sum(std::vector<int> twists) {
  SheafPresentation<S> p;
  p.kind = PresentationKind::Cokernel;
  p.target.twists = std::move(twists);
  p.matrix.assign(p.target.twists.size(), {});
  return p;
}

}  // namespace jumplab
