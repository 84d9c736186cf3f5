#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twostep/forms.hpp"
#include "twostep/linalg.hpp"

namespace twostep {

using IndexSet = std::vector<std::size_t>;

/// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexSet> combinations(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  IndexSet c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Lexicographic rank of a sorted k-subset of {0..n-1}.
inline std::size_t combination_rank(const IndexSet& c, std::size_t n) {
  auto binom = [](std::size_t a, std::size_t b) -> std::size_t {
    if (b > a) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  const std::size_t k = c.size();
  std::size_t rank = 0, prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = (i == 0 ? 0 : prev + 1); v < c[i]; ++v) rank += binom(n - v - 1, k - i - 1);
    prev = c[i];
  }
  return rank;
}

/// Sorts idx in place; returns the sign of the sorting permutation, or 0 on a repeated index.
inline int sort_with_sign(IndexSet& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  std::sort(idx.begin(), idx.end());
  return sign;
}

/// Projective point of P(Lambda^k F^n), normalized so its first nonzero coordinate
/// (lexicographic index order) is 1.
template <ExactField F>
class PluckerPoint {
 public:
  using Scalar = typename F::Scalar;

  PluckerPoint(F field, std::size_t k, std::size_t n, std::vector<Scalar> coords)
      : field_(std::move(field)), k_(k), n_(n), coords_(std::move(coords)) {
    if (k == 0 || k > n) throw std::invalid_argument("PluckerPoint: need 1 <= k <= n");
    if (coords_.size() != combinations(n, k).size()) throw std::invalid_argument("PluckerPoint: wrong coordinate count");
    auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Scalar& x) { return !is_zero(x); });
    if (lead == coords_.end()) throw std::invalid_argument("PluckerPoint: all coordinates vanish");
    const Scalar inv = field_.one() / *lead;
    for (auto& x : coords_) x *= inv;
  }

  const F& field() const { return field_; }
  std::size_t k() const { return k_; }
  std::size_t n() const { return n_; }
  /// Coordinates in lexicographic order of the index sets.
  const std::vector<Scalar>& coords() const { return coords_; }

  /// p_{i_1..i_k} for an arbitrary index sequence, extended as an alternating function.
  Scalar operator[](IndexSet idx) const {
    const int sign = sort_with_sign(idx);
    if (sign == 0) return field_.zero();
    const Scalar& v = coords_[combination_rank(idx, n_)];
    return sign > 0 ? v : -v;
  }

  friend bool operator==(const PluckerPoint&, const PluckerPoint&) = default;

 private:
  F field_;
  std::size_t k_;
  std::size_t n_;
  std::vector<Scalar> coords_;
};

template <ExactField F>
PluckerPoint<F> plucker(const Subspace<F>& u) {
  const std::size_t k = u.dim(), n = u.ambient_dim();
  if (k == 0) throw std::invalid_argument("plucker: zero-dimensional subspace");
  std::vector<typename F::Scalar> coords;
  for (const auto& cols : combinations(n, k)) {
    Matrix<F> minor(u.field(), k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) minor(r, c) = u.basis()(r, cols[c]);
    coords.push_back(determinant(minor));
  }
  return PluckerPoint<F>(u.field(), k, n, std::move(coords));
}

/// Evaluates sum_r (-1)^r p_{i_1..i_{k-1} j_r} p_{j_1..^j_r..j_{k+1}} over all index sequences.
template <ExactField F>
bool check_plucker_relations(const PluckerPoint<F>& p) {
  using Scalar = typename F::Scalar;
  const std::size_t k = p.k(), n = p.n();
  if (k + 1 > n) return true;
  const auto is = combinations(n, k - 1);
  const auto js = combinations(n, k + 1);
  for (const auto& i : is)
    for (const auto& j : js) {
      Scalar sum = p.field().zero();
      for (std::size_t r = 0; r < j.size(); ++r) {
        IndexSet left = i;
        left.push_back(j[r]);
        IndexSet right;
        for (std::size_t q = 0; q < j.size(); ++q)
          if (q != r) right.push_back(j[q]);
        const Scalar term = p[left] * p[right];
        // r is 0-based here, so (-1)^(r+1)
        if (r % 2 == 0)
          sum -= term;
        else
          sum += term;
      }
      if (!is_zero(sum)) return false;
    }
  return true;
}

/// Recovers U from its Plucker point.
///
/// With I the lexicographically first index set where p_I != 0, U has the basis
/// f_i = e_{I_i} + sum_{r not in I} a_{ir} e_r where a_{ir} = p_{I with I_i replaced by r} / p_I.
/// For I = {1..k} this is a_{ir} = (-1)^(k-i) p_{1..^i..k r} / p_{1..k}.
template <ExactField F>
Subspace<F> basis_from_plucker(const PluckerPoint<F>& p) {
  if (!check_plucker_relations(p)) throw std::invalid_argument("basis_from_plucker: point is not on the Grassmannian");
  const std::size_t k = p.k(), n = p.n();
  const auto sets = combinations(n, k);
  std::size_t lead = 0;
  while (is_zero(p.coords()[lead])) ++lead;
  const IndexSet& base = sets[lead];
  const auto denom = p.coords()[lead];
  Matrix<F> basis(p.field(), k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < n; ++r) {
      IndexSet replaced = base;
      replaced[i] = r;
      basis(i, r) = p[replaced] / denom;
    }
  return Subspace<F>::span(basis);
}

constexpr std::size_t dim_grassmannian(std::size_t k, std::size_t n) {
  if (k > n) throw std::invalid_argument("dim_grassmannian: k > n");
  return k * (n - k);
}

/// Dimension of the Schubert cell {U : dim(U meet V_i) >= i}; vdims[i] = dim V_{i+1}.
inline std::size_t schubert_dim(const std::vector<std::size_t>& vdims) {
  std::size_t sum = 0;
  for (std::size_t i = 0; i < vdims.size(); ++i) {
    if (vdims[i] < i + 1) throw std::invalid_argument("schubert_dim: dim V_i must be >= i");
    if (i > 0 && vdims[i] <= vdims[i - 1]) throw std::invalid_argument("schubert_dim: dimensions must increase");
    sum += vdims[i] - (i + 1);
  }
  return sum;
}

/// dim G_s = s(m - s) + (k - s)(n - k): k-subspaces of F^n meeting a fixed m-subspace in dimension >= s.
inline std::size_t gs_dim(std::size_t s, std::size_t m, std::size_t k, std::size_t n) {
  if (k > n || m > n) throw std::invalid_argument("gs_dim: need k, m <= n");
  const std::size_t lo = k + m > n ? k + m - n : 0;
  if (s < lo || s > std::min(k, m)) throw std::invalid_argument("gs_dim: s outside [max(0, k+m-n), min(k, m)]");
  return s * (m - s) + (k - s) * (n - k);
}

template <ExactField F>
bool gs_member(const Subspace<F>& uprime, const Subspace<F>& u, std::size_t s) {
  return intersect_spans(u, uprime).dim() >= s;
}

namespace detail {

inline void check_fiber_params(std::size_t n, std::size_t n0, std::size_t t, std::size_t t0) {
  const std::size_t big = form_space_dim(n), small = form_space_dim(n0);
  if (n0 > n || t0 < 1 || t0 > t || t > big || t0 > small)
    throw std::invalid_argument("fiber_dim: need n0 <= n, 1 <= t0 <= min(t, n0(n0-1)/2), t <= n(n-1)/2");
  // the G_s range: t0 >= t + n0(n0-1)/2 - n(n-1)/2
  if (t + small > big + t0)
    throw std::invalid_argument("fiber_dim: t >= n(n-1)/2 - n0(n0-1)/2 + t0 holds strictly; every U qualifies");
}

}  // namespace detail

/// Dimension of {Omega in G(t, B_n) : dim(N_0(U) meet Omega) >= t0} for a fixed U of dimension n - n0.
inline std::size_t fiber_dim(std::size_t n, std::size_t n0, std::size_t t, std::size_t t0) {
  detail::check_fiber_params(n, n0, t, t0);
  return gs_dim(t0, form_space_dim(n0), t, form_space_dim(n));
}

/// Dimension of the incidence variety D of pairs (U, Omega): fiber dimension plus dim G(n - n0, n).
inline std::size_t variety_d_dim(std::size_t n, std::size_t n0, std::size_t t, std::size_t t0) {
  return fiber_dim(n, n0, t, t0) + n0 * (n - n0);
}

}  // namespace twostep
