#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twostep/field.hpp"
#include "twostep/matrix.hpp"

namespace twostep {

template <ExactField F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
  using Scalar = typename F::Scalar;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    const Scalar inv = m.field().one() / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), row, std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

template <ExactField F>
typename F::Scalar determinant(Matrix<F> m) {
  using Scalar = typename F::Scalar;
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  Scalar det = m.field().one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && is_zero(m(sel, col))) ++sel;
    if (sel == n) return m.field().zero();
    if (sel != col) {
      m.swap_rows(sel, col);
      det = -det;
    }
    const Scalar pivot = m(col, col);
    det *= pivot;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const Scalar factor = m(r, col) / pivot;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
  return m.is_square() && rank(m) == m.rows();
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix<F> aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = m.field().one();
  }
  auto red = rref(std::move(aug));
  if (red.rank < n || red.pivot_columns[n - 1] != n - 1) throw std::domain_error("inverse: matrix is singular");
  Matrix<F> inv(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.reduced(r, n + c);
  return inv;
}

/// True when a is square, a^T = -a and the diagonal vanishes.
template <ExactField F>
bool is_alternating(const Matrix<F>& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!is_zero(a(i, i))) return false;
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!(a(i, j) == -a(j, i))) return false;
  }
  return true;
}

namespace detail {

template <ExactField F>
typename F::Scalar pfaffian_expand(const Matrix<F>& a, const std::vector<std::size_t>& idx) {
  using Scalar = typename F::Scalar;
  if (idx.empty()) return a.field().one();
  Scalar sum = a.field().zero();
  const std::size_t first = idx[0];
  std::vector<std::size_t> rest;
  rest.reserve(idx.size() - 2);
  for (std::size_t pos = 1; pos < idx.size(); ++pos) {
    const Scalar& entry = a(first, idx[pos]);
    if (is_zero(entry)) continue;
    rest.clear();
    for (std::size_t q = 1; q < idx.size(); ++q)
      if (q != pos) rest.push_back(idx[q]);
    const Scalar term = entry * pfaffian_expand(a, rest);
    if (pos % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

}  // namespace detail

/// Pfaffian of an even-sized alternating matrix, by expansion along the first row.
template <ExactField F>
typename F::Scalar pfaffian(const Matrix<F>& a) {
  if (!is_alternating(a)) throw std::invalid_argument("pfaffian: matrix is not alternating");
  if (a.rows() % 2 != 0) throw std::invalid_argument("pfaffian: odd size");
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return detail::pfaffian_expand(a, idx);
}

/// A linear subspace of F^n, stored as its canonical (RREF, full row rank) basis.
/// Two subspaces are equal exactly when their bases are identical.
template <ExactField F>
class Subspace {
 public:
  using Scalar = typename F::Scalar;

  /// Row space of `rows`; the rows need not be independent.
  static Subspace span(const Matrix<F>& rows) {
    auto red = rref(rows);
    Matrix<F> basis(rows.field(), red.rank, rows.cols());
    for (std::size_t r = 0; r < red.rank; ++r)
      for (std::size_t c = 0; c < rows.cols(); ++c) basis(r, c) = red.reduced(r, c);
    return Subspace(std::move(basis));
  }

  static Subspace span(const F& field, std::size_t ambient, const std::vector<Vector<F>>& vectors) {
    return span(Matrix<F>::from_rows(field, ambient, vectors));
  }

  static Subspace zero(const F& field, std::size_t ambient) { return Subspace(Matrix<F>(field, 0, ambient)); }
  static Subspace whole(const F& field, std::size_t ambient) {
    return Subspace(Matrix<F>::identity(field, ambient));
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }
  Vector<F> basis_vector(std::size_t i) const { return basis_.row(i); }

  std::vector<Vector<F>> basis_vectors() const {
    std::vector<Vector<F>> v;
    for (std::size_t i = 0; i < dim(); ++i) v.push_back(basis_.row(i));
    return v;
  }

  /// Pivot columns of the canonical basis.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (std::size_t r = 0; r < dim(); ++r) {
      std::size_t c = 0;
      while (is_zero(basis_(r, c))) ++c;
      p.push_back(c);
    }
    return p;
  }

  bool contains(const Vector<F>& v) const {
    if (v.size() != ambient_dim()) throw std::invalid_argument("Subspace::contains: length mismatch");
    // Reduce v against the RREF basis; pivot entries determine the coefficients.
    Vector<F> w = v;
    const auto piv = pivots();
    for (std::size_t r = 0; r < dim(); ++r) {
      const Scalar coeff = w[piv[r]];
      if (is_zero(coeff)) continue;
      for (std::size_t c = 0; c < ambient_dim(); ++c) w[c] -= coeff * basis_(r, c);
    }
    return is_zero_vector<F>(w);
  }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Matrix<F> basis) : basis_(std::move(basis)) {}

  Matrix<F> basis_;
};

/// {x : m x = 0} as a canonical subspace.
template <ExactField F>
Subspace<F> kernel_basis(const Matrix<F>& m) {
  const auto red = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivot_columns) is_pivot[c] = true;
  std::vector<Vector<F>> vectors;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<F> x = zero_vector(m.field(), n);
    x[free] = m.field().one();
    for (std::size_t r = 0; r < red.rank; ++r) x[red.pivot_columns[r]] = -red.reduced(r, free);
    vectors.push_back(std::move(x));
  }
  return Subspace<F>::span(m.field(), n, vectors);
}

/// Linear functionals vanishing on s, as a subspace of the dual (same coordinates).
template <ExactField F>
Subspace<F> annihilator(const Subspace<F>& s) {
  return kernel_basis(s.basis());
}

template <ExactField F>
Subspace<F> intersect_spans(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect_spans: ambient dimension mismatch");
  const auto ann_a = annihilator(a);
  const auto ann_b = annihilator(b);
  return kernel_basis(Matrix<F>::stack(ann_a.basis(), ann_b.basis()));
}

template <ExactField F>
Subspace<F> sum_spans(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum_spans: ambient dimension mismatch");
  return Subspace<F>::span(Matrix<F>::stack(a.basis(), b.basis()));
}

}  // namespace twostep
