#pragma once

// Fitting-ideal generators of presentation matrices, the adjugate-kernel
// construction with explicit certificates, and the degree / lct-bound
// bookkeeping attached to them.  All ideal memberships are certified
// constructively (Laplace witnesses, adjugate identities).

#include "jumplab/homform.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace jumplab {

template <class S>
using FormMatrix = std::vector<std::vector<HomForm<S>>>;

template <class S>
HomForm<S> form_determinant(const FormMatrix<S>& m, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
  std::function<HomForm<S>(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> r, std::vector<int> c) -> HomForm<S> {
    if (r.empty()) {
      HomForm<S> one(3, 0);
      one.coeff(0, 0) = ScalarOps<S>::from_int(1, S{});
      return one;
    }
    HomForm<S> acc(3, 0);
    bool acc_set = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto& e = m[static_cast<std::size_t>(r[0])][static_cast<std::size_t>(c[j])];
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
    return acc_set ? acc : HomForm<S>(3, 0);
  };
  return det(rows, cols);
}

enum class IdealKind { Proper, Unit, Zero };

template <class S>
struct FittingGenerators {
  int j = 0;
  int minor_size = 0;
  IdealKind kind = IdealKind::Proper;
  std::vector<HomForm<S>> minors;  // deduplicated, nonzero
};

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(idx.size()) == k) {
      f(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

// All (n - j)-minors of M, where n is the generator count of the
// presented module.  Size <= 0 gives the unit ideal, size beyond the
// matrix dimensions gives the zero ideal.
template <class S>
FittingGenerators<S> fitting_generators(const FormMatrix<S>& m, int n, int j) {
  if (j < 0 || j > n) throw std::invalid_argument("fitting_generators: 0 <= j <= n");
  const int rows = static_cast<int>(m.size());
  const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("fitting_generators: ragged matrix");
  FittingGenerators<S> out;
  out.j = j;
  out.minor_size = n - j;
  if (out.minor_size <= 0) {
    out.kind = IdealKind::Unit;
    return out;
  }
  if (out.minor_size > rows || out.minor_size > cols) {
    out.kind = IdealKind::Zero;
    return out;
  }
  const int k = out.minor_size;
  detail::for_each_subset(rows, k, [&](const std::vector<int>& rs) {
    detail::for_each_subset(cols, k, [&](const std::vector<int>& cs) {
      HomForm<S> d = form_determinant(m, rs, cs);
      if (d.is_zero()) return;
      for (const auto& seen : out.minors) {
        if (seen == d || seen == -d) return;
      }
      out.minors.push_back(std::move(d));
    });
  });
  if (out.minors.empty()) out.kind = IdealKind::Zero;
  return out;
}

template <class S>
struct AdjugateCertificate {
  std::vector<int> selected_rows;
  std::vector<int> selected_cols;
  HomForm<S> det_a;
  std::vector<std::vector<HomForm<S>>> kernel_vectors;  // each of length cols(N)
};

struct SingularSelection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// adj(A) applied to the columns outside the selection yields d - r kernel
// vectors of N with entries of degree r * delta; detA itself is one of
// the r-minors, hence a Fitting generator.
template <class S>
AdjugateCertificate<S> adjugate_kernel(const FormMatrix<S>& n_mat, int r,
                                       const std::vector<int>& rows,
                                       const std::vector<int>& cols_of_a) {
  const int nrows = static_cast<int>(n_mat.size());
  const int d = nrows > 0 ? static_cast<int>(n_mat[0].size()) : 0;
  if (r < 1 || static_cast<int>(rows.size()) != r ||
      static_cast<int>(cols_of_a.size()) != r || d < r)
    throw std::invalid_argument("adjugate_kernel: bad selection shape");

  AdjugateCertificate<S> cert;
  cert.selected_rows = rows;
  cert.selected_cols = cols_of_a;
  cert.det_a = form_determinant(n_mat, rows, cols_of_a);
  if (cert.det_a.is_zero())
    throw SingularSelection("adjugate_kernel: selected submatrix is singular");
  if (d == r) return cert;  // square nonsingular: no kernel

  // B = adj(A) * G where G is the selected rows, all columns.
  // B[i][c] = sum_k adj(A)[i][k] G[k][c], adj(A)[i][k] = cofactor(A)[k][i].
  FormMatrix<S> b(static_cast<std::size_t>(r),
                  std::vector<HomForm<S>>(static_cast<std::size_t>(d), HomForm<S>(3, 0)));
  for (int i = 0; i < r; ++i) {
    for (int c = 0; c < d; ++c) {
      HomForm<S> acc(3, 0);
      bool set = false;
      for (int k = 0; k < r; ++k) {
        // cofactor of A at (k, i): delete row k, column i of the selection
        std::vector<int> rs, cs;
        for (int t = 0; t < r; ++t) {
          if (t != k) rs.push_back(rows[static_cast<std::size_t>(t)]);
          if (t != i) cs.push_back(cols_of_a[static_cast<std::size_t>(t)]);
        }
        HomForm<S> cof = form_determinant(n_mat, rs, cs);
        if ((i + k) % 2 == 1) cof = -cof;
        const auto& g = n_mat[static_cast<std::size_t>(rows[static_cast<std::size_t>(k)])]
                             [static_cast<std::size_t>(c)];
        if (cof.is_zero() || g.is_zero()) continue;
        HomForm<S> term = cof * g;
        if (!set) {
          acc = term;
          set = true;
        } else {
          acc = acc + term;
        }
      }
      b[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = acc;
    }
  }

  std::vector<bool> in_a(static_cast<std::size_t>(d), false);
  for (int c : cols_of_a) in_a[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < d; ++c) {
    if (in_a[static_cast<std::size_t>(c)]) continue;
    std::vector<HomForm<S>> v(static_cast<std::size_t>(d), HomForm<S>(3, 0));
    for (int i = 0; i < r; ++i)
      v[static_cast<std::size_t>(cols_of_a[static_cast<std::size_t>(i)])] =
          -b[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    v[static_cast<std::size_t>(c)] = cert.det_a;
    cert.kernel_vectors.push_back(std::move(v));
  }
  return cert;
}

// Deterministic selection: first r-subsets of rows and columns in
// lexicographic order whose minor is nonzero.
template <class S>
AdjugateCertificate<S> adjugate_kernel_auto(const FormMatrix<S>& n_mat, int r) {
  const int nrows = static_cast<int>(n_mat.size());
  const int d = nrows > 0 ? static_cast<int>(n_mat[0].size()) : 0;
  std::optional<AdjugateCertificate<S>> found;
  detail::for_each_subset(nrows, r, [&](const std::vector<int>& rs) {
    if (found) return;
    detail::for_each_subset(d, r, [&](const std::vector<int>& cs) {
      if (found) return;
      try {
        found = adjugate_kernel(n_mat, r, rs, cs);
      } catch (const SingularSelection&) {
      }
    });
  });
  if (!found)
    throw SingularSelection("adjugate_kernel_auto: no nonsingular selection (rank < r)");
  return *found;
}

// Exact check N . v == 0 for a certificate vector.
template <class S>
bool annihilates(const FormMatrix<S>& n_mat, const std::vector<HomForm<S>>& v) {
  for (const auto& row : n_mat) {
    HomForm<S> acc(3, 0);
    bool set = false;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_zero() || v[j].is_zero()) continue;
      HomForm<S> term = row[j] * v[j];
      if (!set) {
        acc = term;
        set = true;
      } else {
        acc = acc + term;
      }
    }
    if (set && !acc.is_zero()) return false;
  }
  return true;
}

// deg of the divisor cut out by the (d - r)-minors of the syzygy matrix:
// (d - r) * r * (c1Q - r * L).
inline int fit_divisor_degree(int d, int r, int c1q, int l) {
  if (d <= r || r < 1) throw std::invalid_argument("fit_divisor_degree: requires d > r >= 1");
  return (d - r) * r * (c1q - r * l);
}

// Closed-form lower bound 1 / (upsilon * (d - r) * r * deg_beta_pairing)
// for the log canonical threshold of Fit_r; upsilon is a user-supplied
// positive constant, never defaulted.
inline Rational lct_lower_bound(const Rational& upsilon, int d, int r, int deg_beta) {
  if (upsilon <= 0 || d <= r || r < 1 || deg_beta <= 0)
    throw std::invalid_argument("lct_lower_bound: inputs must be positive with d > r");
  return Rational(1) / (upsilon * (d - r) * r * deg_beta);
}

// Laplace expansion witness: a (k+1)-minor written as a form-linear
// combination of k-minors along its first row.
template <class S>
struct LaplaceWitness {
  std::vector<int> rows, cols;          // the (k+1)-selection
  std::vector<HomForm<S>> coefficients; // signed entry forms
  std::vector<std::vector<int>> sub_rows, sub_cols;
};

template <class S>
LaplaceWitness<S> laplace_witness(const FormMatrix<S>& m, const std::vector<int>& rows,
                                  const std::vector<int>& cols) {
  LaplaceWitness<S> w;
  w.rows = rows;
  w.cols = cols;
  std::vector<int> r2(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    HomForm<S> c = m[static_cast<std::size_t>(rows[0])][static_cast<std::size_t>(cols[j])];
    if (j % 2 == 1) c = -c;
    std::vector<int> c2;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != j) c2.push_back(cols[t]);
    w.coefficients.push_back(std::move(c));
    w.sub_rows.push_back(r2);
    w.sub_cols.push_back(std::move(c2));
  }
  return w;
}

template <class S>
bool verify_laplace_witness(const FormMatrix<S>& m, const LaplaceWitness<S>& w) {
  HomForm<S> lhs = form_determinant(m, w.rows, w.cols);
  HomForm<S> rhs(3, 0);
  bool set = false;
  for (std::size_t i = 0; i < w.coefficients.size(); ++i) {
    if (w.coefficients[i].is_zero()) continue;
    HomForm<S> term = w.coefficients[i] * form_determinant(m, w.sub_rows[i], w.sub_cols[i]);
    if (!set) {
      rhs = term;
      set = true;
    } else {
      rhs = rhs + term;
    }
  }
  return lhs == rhs;
}

}  // namespace jumplab
