#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "twostep/field.hpp"
#include "twostep/linalg.hpp"
#include "twostep/matrix.hpp"
#include "twostep/rng.hpp"

namespace twostep {

/// Dimension of the space B_n of alternating bilinear forms on an n-dimensional space.
constexpr std::size_t form_space_dim(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

/// Position of psi_{ij} (i < j) in the lexicographic standard basis of B_n.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// An alternating bilinear form given by its Gram matrix in the standard basis.
template <ExactField F>
class AlternatingForm {
 public:
  using Scalar = typename F::Scalar;

  explicit AlternatingForm(Matrix<F> m) : m_(std::move(m)) {
    if (!is_alternating(m_)) throw std::invalid_argument("AlternatingForm: matrix is not alternating");
  }

  static AlternatingForm zero(const F& field, std::size_t n) { return AlternatingForm(Matrix<F>(field, n, n)); }

  /// psi_{ij}: +1 at (i, j), -1 at (j, i).
  static AlternatingForm basis_form(const F& field, std::size_t n, std::size_t i, std::size_t j) {
    if (i >= j || j >= n) throw std::invalid_argument("basis_form: need i < j < n");
    Matrix<F> m(field, n, n);
    m(i, j) = field.one();
    m(j, i) = -field.one();
    return AlternatingForm(std::move(m));
  }

  static AlternatingForm from_coordinates(const F& field, std::size_t n, const Vector<F>& coords) {
    if (coords.size() != form_space_dim(n)) throw std::invalid_argument("from_coordinates: wrong length");
    Matrix<F> m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = coords[pair_index(n, i, j)];
        m(j, i) = -coords[pair_index(n, i, j)];
      }
    return AlternatingForm(std::move(m));
  }

  const F& field() const { return m_.field(); }
  std::size_t size() const { return m_.rows(); }
  const Matrix<F>& matrix() const { return m_; }

  /// Coordinates with respect to psi_{ij}, i < j in lexicographic order.
  Vector<F> coordinates() const {
    Vector<F> c;
    c.reserve(form_space_dim(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) c.push_back(m_(i, j));
    return c;
  }

  Scalar operator()(const Vector<F>& x, const Vector<F>& y) const {
    if (x.size() != size() || y.size() != size()) throw std::invalid_argument("evaluate: vector length mismatch");
    Scalar s = field().zero();
    for (std::size_t i = 0; i < size(); ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < size(); ++j) s += x[i] * m_(i, j) * y[j];
    }
    return s;
  }

  friend AlternatingForm operator+(const AlternatingForm& a, const AlternatingForm& b) {
    return AlternatingForm(a.m_ + b.m_);
  }
  friend AlternatingForm operator-(const AlternatingForm& a, const AlternatingForm& b) {
    return AlternatingForm(a.m_ - b.m_);
  }
  friend AlternatingForm operator*(const Scalar& s, const AlternatingForm& a) { return AlternatingForm(s * a.m_); }
  friend bool operator==(const AlternatingForm&, const AlternatingForm&) = default;

 private:
  Matrix<F> m_;
};

template <ExactField F>
typename F::Scalar evaluate(const AlternatingForm<F>& f, const Vector<F>& x, const Vector<F>& y) {
  return f(x, y);
}

/// An ordered tuple (phi_1, ..., phi_t) of alternating forms on an n-dimensional space.
template <ExactField F>
class FormTuple {
 public:
  FormTuple(F field, std::size_t n, std::vector<AlternatingForm<F>> forms)
      : field_(std::move(field)), n_(n), forms_(std::move(forms)) {
    for (const auto& f : forms_) {
      if (f.size() != n_) throw std::invalid_argument("FormTuple: form size differs from n");
      if (!(f.field() == field_)) throw FieldMismatch("FormTuple: forms over different fields");
    }
  }

  static FormTuple from_ints(const F& field, const std::vector<std::vector<std::vector<long>>>& mats) {
    if (mats.empty()) throw std::invalid_argument("FormTuple::from_ints: empty tuple");
    std::vector<AlternatingForm<F>> forms;
    for (const auto& m : mats) forms.emplace_back(Matrix<F>::from_ints(field, m));
    return FormTuple(field, mats.front().size(), std::move(forms));
  }

  const F& field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t t() const { return forms_.size(); }
  const std::vector<AlternatingForm<F>>& forms() const { return forms_; }
  const AlternatingForm<F>& operator[](std::size_t i) const { return forms_.at(i); }

  /// t x n(n-1)/2 matrix whose rows are the coordinates of the forms.
  Matrix<F> vectorization() const {
    Matrix<F> m(field_, t(), form_space_dim(n_));
    for (std::size_t i = 0; i < t(); ++i) m.set_row(i, forms_[i].coordinates());
    return m;
  }

  Subspace<F> span() const { return Subspace<F>::span(vectorization()); }

  friend bool operator==(const FormTuple&, const FormTuple&) = default;

 private:
  F field_;
  std::size_t n_;
  std::vector<AlternatingForm<F>> forms_;
};

template <ExactField F>
bool is_independent(const FormTuple<F>& phi) {
  return rank(phi.vectorization()) == phi.t();
}

/// phi'_i = sum_j c[i][j] phi_j.
template <ExactField F>
FormTuple<F> change_basis_tuple(const FormTuple<F>& phi, const Matrix<F>& c) {
  if (c.rows() != phi.t() || c.cols() != phi.t())
    throw std::invalid_argument("change_basis_tuple: transformation must be t x t");
  if (!is_invertible(c)) throw std::domain_error("change_basis_tuple: transformation is singular");
  std::vector<AlternatingForm<F>> out;
  for (std::size_t i = 0; i < phi.t(); ++i) {
    Matrix<F> acc(phi.field(), phi.n(), phi.n());
    for (std::size_t j = 0; j < phi.t(); ++j)
      if (!is_zero(c(i, j))) acc += c(i, j) * phi[j].matrix();
    out.emplace_back(std::move(acc));
  }
  return FormTuple<F>(phi.field(), phi.n(), std::move(out));
}

template <ExactField F>
bool spans_equal(const FormTuple<F>& phi, const FormTuple<F>& psi) {
  if (phi.n() != psi.n()) throw std::invalid_argument("spans_equal: different n");
  return phi.span() == psi.span();
}

/// N_0(U): forms phi with phi(x, u) = 0 for all x in V and u in U, in form coordinates.
template <ExactField F>
Subspace<F> n0_space(const Subspace<F>& u, std::size_t n) {
  if (u.ambient_dim() != n) throw std::invalid_argument("n0_space: subspace does not live in F^n");
  const F& field = u.field();
  const std::size_t m = form_space_dim(n);
  // phi(e_x, u) = sum_{i<j} c_ij ([x == i] u_j - [x == j] u_i)
  Matrix<F> constraints(field, u.dim() * n, m);
  for (std::size_t b = 0; b < u.dim(); ++b) {
    const Vector<F> vec = u.basis_vector(b);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t row = b * n + x;
      for (std::size_t j = x + 1; j < n; ++j) constraints(row, pair_index(n, x, j)) += vec[j];
      for (std::size_t i = 0; i < x; ++i) constraints(row, pair_index(n, i, x)) -= vec[i];
    }
  }
  Subspace<F> result = kernel_basis(constraints);
  const std::size_t rest = n - u.dim();
  if (result.dim() != rest * (rest - (rest > 0 ? 1 : 0)) / 2)
    throw std::logic_error("n0_space: dimension postcondition violated");
  return result;
}

template <ExactField F>
bool has_integer_entries(const FormTuple<F>& phi) {
  if constexpr (std::is_same_v<F, RationalField>) {
    for (const auto& f : phi.forms())
      for (std::size_t i = 0; i < phi.n(); ++i)
        for (std::size_t j = 0; j < phi.n(); ++j)
          if (f.matrix()(i, j).get_den() != 1) return false;
  }
  return true;
}

/// Image of a rational tuple in F_p. Throws ReductionError when an entry is not p-integral.
inline FormTuple<PrimeField> reduce_mod(const FormTuple<RationalField>& phi, const PrimeField& fp) {
  std::vector<AlternatingForm<PrimeField>> out;
  for (const auto& f : phi.forms()) {
    Matrix<PrimeField> m(fp, phi.n(), phi.n());
    for (std::size_t i = 0; i < phi.n(); ++i)
      for (std::size_t j = 0; j < phi.n(); ++j) m(i, j) = fp.reduce(f.matrix()(i, j));
    out.emplace_back(std::move(m));
  }
  return FormTuple<PrimeField>(fp, phi.n(), std::move(out));
}

struct RandomTupleDraw {
  FormTuple<RationalField> tuple;
  std::size_t resamples = 0;
};

/// Draws upper-triangular entries uniformly from [-bound, bound] until the tuple is independent.
inline RandomTupleDraw draw_random_tuple(std::size_t n, std::size_t t, long bound, Rng& rng) {
  if (t < 1 || t > form_space_dim(n)) throw std::invalid_argument("random_tuple: need 1 <= t <= n(n-1)/2");
  if (bound < 1) throw std::invalid_argument("random_tuple: bound must be >= 1");
  const RationalField q;
  for (std::size_t attempt = 0;; ++attempt) {
    std::vector<AlternatingForm<RationalField>> forms;
    for (std::size_t k = 0; k < t; ++k) {
      Matrix<RationalField> m(q, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const long v = rng.uniform(-bound, bound);
          m(i, j) = q.from_int(v);
          m(j, i) = q.from_int(-v);
        }
      forms.emplace_back(std::move(m));
    }
    FormTuple<RationalField> phi(q, n, std::move(forms));
    if (is_independent(phi)) return {std::move(phi), attempt};
  }
}

inline FormTuple<RationalField> random_tuple(std::size_t n, std::size_t t, long bound, Rng& rng) {
  return draw_random_tuple(n, t, bound, rng).tuple;
}

inline FormTuple<RationalField> random_tuple(std::size_t n, std::size_t t, long bound, std::uint64_t seed) {
  Rng rng(seed);
  return random_tuple(n, t, bound, rng);
}

}  // namespace twostep
