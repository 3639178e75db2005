#pragma once

// Pullback of presentations along rational curves s : P^1 -> P^2 and the
// exact splitting type of the restricted bundle, recovered from the
// window of twisted section counts h(m).

#include "jumplab/homform.hpp"
#include "jumplab/panel.hpp"
#include "jumplab/sheaf.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jumplab {

struct BasePointedCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct RationalCurveMap {
  int degree;
  HomForm<S> x, y, z;  // binary forms of equal degree

  void validate() const {
    if (degree < 1) throw std::invalid_argument("RationalCurveMap: degree >= 1");
    for (const HomForm<S>* f : {&x, &y, &z})
      if (f->num_vars() != 2 || (!f->is_zero() && f->degree() != degree))
        throw std::invalid_argument("RationalCurveMap: forms must be binary of the map degree");
    if (x.is_zero() && y.is_zero() && z.is_zero())
      throw std::invalid_argument("RationalCurveMap: zero map");
  }

  bool base_point_free() const {
    const HomForm<S>* first = nullptr;
    HomForm<S> g;
    for (const HomForm<S>* f : {&x, &y, &z}) {
      if (f->is_zero()) continue;
      if (!first) {
        first = f;
        g = *f;
      } else {
        g = hom_gcd(g, *f);
      }
    }
    return first != nullptr && g.degree() == 0;
  }
};

template <class S>
struct P1Presentation {
  PresentationKind kind;
  std::vector<int> source_twists;  // already multiplied by the curve degree
  std::vector<int> target_twists;
  std::vector<std::vector<HomForm<S>>> matrix;  // binary forms
};

struct SplittingType {
  std::vector<int> parts;  // non-increasing

  int rank() const { return static_cast<int>(parts.size()); }
  int degree() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  SlopePanel panel() const {
    return SlopePanel(std::vector<Rational>(parts.begin(), parts.end()));
  }
  friend bool operator==(const SplittingType& a, const SplittingType& b) {
    return a.parts == b.parts;
  }
};

template <class S>
P1Presentation<S> pullback(const SheafPresentation<S>& pres,
                           const RationalCurveMap<S>& s) {
  s.validate();
  if (!s.base_point_free())
    throw BasePointedCurve("pullback: curve map has a base point");
  P1Presentation<S> out;
  out.kind = pres.kind;
  for (int t : pres.source.twists) out.source_twists.push_back(t * s.degree);
  for (int t : pres.target.twists) out.target_twists.push_back(t * s.degree);
  out.matrix.resize(pres.matrix.size());
  for (std::size_t i = 0; i < pres.matrix.size(); ++i) {
    out.matrix[i].reserve(pres.matrix[i].size());
    for (const auto& entry : pres.matrix[i])
      out.matrix[i].push_back(entry.is_zero() ? HomForm<S>(2, 0)
                                              : substitute(entry, s.x, s.y, s.z));
  }
  return out;
}

// True iff the matrix has pointwise full rank on P^1: the gcd of all
// maximal minors is a nonzero constant.  Empty matrices are vacuously
// full rank (direct sums).
template <class S>
bool certify_bundle(const P1Presentation<S>& p1) {
  const int rows = static_cast<int>(p1.matrix.size());
  const int cols = rows > 0 ? static_cast<int>(p1.matrix[0].size()) : 0;
  const int k = std::min(rows, cols);
  if (k == 0) return true;
  // enumerate k-subsets of rows and columns; minors via Laplace expansion
  std::optional<HomForm<S>> g;
  auto minor_det = [&](const std::vector<int>& rs, const std::vector<int>& cs) {
    // recursive Laplace along the first row of the selection
    std::function<HomForm<S>(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> r, std::vector<int> c) -> HomForm<S> {
      if (r.empty()) {
        HomForm<S> one(2, 0);
        one.coeff(0, 0) = ScalarOps<S>::from_int(1, S{});
        return one;
      }
      HomForm<S> acc(2, 0);
      bool acc_set = false;
      for (std::size_t j = 0; j < c.size(); ++j) {
        const auto& e = p1.matrix[static_cast<std::size_t>(r[0])][static_cast<std::size_t>(c[j])];
        if (e.is_zero()) continue;
        std::vector<int> r2(r.begin() + 1, r.end());
        std::vector<int> c2 = c;
        c2.erase(c2.begin() + static_cast<std::ptrdiff_t>(j));
        HomForm<S> term = e * det(std::move(r2), std::move(c2));
        if (j % 2 == 1) term = -term;
        if (!acc_set) {
          acc = term;
          acc_set = true;
        } else {
          acc = acc + term;
        }
      }
      return acc_set ? acc : HomForm<S>(2, 0);
    };
    return det(rs, cs);
  };

  bool any_nonzero = false;
  std::vector<int> ridx, cidx;
  std::function<void(int)> pick_cols = [&](int start) {
    if (static_cast<int>(cidx.size()) == k) {
      HomForm<S> d = minor_det(ridx, cidx);
      if (d.is_zero()) return;
      any_nonzero = true;
      if (!g)
        g = d;
      else if (g->degree() > 0)
        g = hom_gcd(*g, d);
      return;
    }
    for (int c = start; c < cols; ++c) {
      cidx.push_back(c);
      pick_cols(c + 1);
      cidx.pop_back();
    }
  };
  std::function<void(int)> pick_rows = [&](int start) {
    if (static_cast<int>(ridx.size()) == k) {
      pick_cols(0);
      return;
    }
    for (int r = start; r < rows; ++r) {
      ridx.push_back(r);
      pick_rows(r + 1);
      ridx.pop_back();
    }
  };
  pick_rows(0);
  return any_nonzero && g && g->degree() == 0;
}

namespace detail {

// h(m) = dim ker of the induced map on sections at twist m on P^1.
template <class S>
Eigen::Index h_window_value(const std::vector<int>& src, const std::vector<int>& tgt,
                            const std::vector<std::vector<HomForm<S>>>& mat, int m) {
  std::vector<Eigen::Index> row_off(tgt.size() + 1, 0);
  std::vector<Eigen::Index> col_off(src.size() + 1, 0);
  for (std::size_t i = 0; i < tgt.size(); ++i)
    row_off[i + 1] = row_off[i] + std::max(tgt[i] + m + 1, 0);
  for (std::size_t j = 0; j < src.size(); ++j)
    col_off[j + 1] = col_off[j] + std::max(src[j] + m + 1, 0);
  MatrixX<S> big = MatrixX<S>::Zero(row_off.back(), col_off.back());
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    for (std::size_t j = 0; j < src.size(); ++j) {
      const int n = src[j] + m;
      if (n < 0 || mat[i][j].is_zero()) continue;
      MatrixX<S> block = multiplication_matrix_p1(mat[i][j], n);
      if (block.rows() == 0 || block.cols() == 0) continue;
      big.block(row_off[i], col_off[j], block.rows(), block.cols()) = block;
    }
  }
  return big.cols() - rank(big);
}

// splitting of the kernel bundle of a certified kernel-kind presentation
template <class S>
SplittingType kernel_splitting(const P1Presentation<S>& p1) {
  const int r = static_cast<int>(p1.source_twists.size()) -
                static_cast<int>(p1.target_twists.size());
  if (r <= 0) throw WindowInconsistency("splitting: non-positive rank");
  int expect_sum = 0;
  for (int a : p1.source_twists) expect_sum += a;
  for (int b : p1.target_twists) expect_sum -= b;

  const int max_src = *std::max_element(p1.source_twists.begin(), p1.source_twists.end());
  const int m0 = -max_src - 1;
  if (h_window_value(p1.source_twists, p1.target_twists, p1.matrix, m0) != 0)
    throw WindowInconsistency("splitting: nonzero sections below the window");

  std::vector<int> parts;
  Eigen::Index h_prev = 0;
  Eigen::Index delta_prev = 0;
  // worst case: all parts at the sum bound; generous guard on iterations
  const int m_limit = m0 + std::abs(expect_sum) + 2 * r + static_cast<int>(
      std::abs(m0)) + 8;
  for (int m = m0 + 1; static_cast<int>(parts.size()) < r; ++m) {
    if (m > m_limit)
      throw WindowInconsistency("splitting: window scan did not terminate");
    Eigen::Index h = h_window_value(p1.source_twists, p1.target_twists, p1.matrix, m);
    Eigen::Index delta = h - h_prev;
    if (delta < delta_prev)
      throw WindowInconsistency("splitting: section counts not concave (torsion?)");
    for (Eigen::Index c = 0; c < delta - delta_prev; ++c) parts.push_back(-m);
    if (static_cast<int>(parts.size()) > r)
      throw WindowInconsistency("splitting: too many parts (generic rank drop?)");
    // self-consistency: h(m) must match the recovered parts so far
    Eigen::Index check = 0;
    for (int e : parts) check += std::max(e + m + 1, 0);
    if (check != h)
      throw WindowInconsistency("splitting: window self-consistency failed");
    h_prev = h;
    delta_prev = delta;
  }
  int sum = 0;
  for (int e : parts) sum += e;
  if (sum != expect_sum)
    throw WindowInconsistency("splitting: sum rule violated");
  return SplittingType{std::move(parts)};
}

}  // namespace detail

template <class S>
SplittingType splitting_type(const P1Presentation<S>& p1) {
  if (!certify_bundle(p1))
    throw CertificationFailure("splitting_type: matrix drops rank on P^1");
  if (p1.kind == PresentationKind::Kernel) return detail::kernel_splitting(p1);
  // cokernel: split the dual kernel presentation, then negate and reverse
  P1Presentation<S> d;
  d.kind = PresentationKind::Kernel;
  for (int t : p1.target_twists) d.source_twists.push_back(-t);
  for (int t : p1.source_twists) d.target_twists.push_back(-t);
  const std::size_t rows = p1.source_twists.size();
  const std::size_t cols = p1.target_twists.size();
  d.matrix.assign(rows, std::vector<HomForm<S>>(cols));
  for (std::size_t i = 0; i < p1.matrix.size(); ++i)
    for (std::size_t j = 0; j < p1.matrix[i].size(); ++j) d.matrix[j][i] = p1.matrix[i][j];
  SplittingType ker = detail::kernel_splitting(d);
  std::vector<int> parts;
  for (auto it = ker.parts.rbegin(); it != ker.parts.rend(); ++it)
    parts.push_back(-*it);
  return SplittingType{std::move(parts)};
}

struct JumpReport {
  SplittingType splitting;
  SlopePanel actual_panel;
  SlopePanel expected;
  Rational mu;              // sup-distance defect
  Rational expected_codim;  // sup{2 mu - 1, 0} for rank 2
  bool rank2 = false;
};

// HN filtration data of the presented sheaf on P^2 w.r.t. the line class.
// Covers the cases the laboratory samples: stable rank-2 presentations
// and direct sums of line bundles.  Anything else needs caller-supplied
// filtration data.
template <class S>
FiltrationData hn_filtration_p2(const SheafPresentation<S>& pres) {
  ChernData cd = chern(pres);
  if (pres.source.count() == 0 ||
      (pres.kind == PresentationKind::Cokernel &&
       [&] {
         for (const auto& row : pres.matrix)
           for (const auto& e : row)
             if (!e.is_zero()) return false;
         return true;
       }())) {
    // direct sum of line bundles: group equal twists in decreasing order
    std::vector<int> t = pres.target.twists;
    std::sort(t.begin(), t.end(), std::greater<>());
    FiltrationData fd;
    for (std::size_t i = 0; i < t.size();) {
      std::size_t j = i;
      while (j < t.size() && t[j] == t[i]) ++j;
      fd.pieces.push_back({static_cast<int>(j - i), Rational(t[i])});
      i = j;
    }
    return fd;
  }
  if (cd.rank == 2 && is_stable_rank2(pres))
    return FiltrationData{{{2, cd.slope()}}};
  throw MalformedPresentation(
      "hn_filtration_p2: supply filtration data for non-stable presentations");
}

template <class S>
JumpReport jump_report(const SheafPresentation<S>& pres, const RationalCurveMap<S>& s,
                       std::optional<FiltrationData> hn = std::nullopt) {
  FiltrationData filt = hn ? *hn : hn_filtration_p2(pres);
  SlopePanel expect = expected_panel(filt, s.degree);
  SplittingType split = splitting_type(pullback(pres, s));
  SlopePanel actual = split.panel();
  Rational mu = sup_distance(actual, expect);
  ChernData cd = chern(pres);
  JumpReport rep{std::move(split), std::move(actual), std::move(expect), mu,
                 0, cd.rank == 2};
  if (cd.rank == 2) {
    Rational v = 2 * mu - 1;
    rep.expected_codim = v > 0 ? v : Rational(0);
  }
  return rep;
}

}  // namespace jumplab
