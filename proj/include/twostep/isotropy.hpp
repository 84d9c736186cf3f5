#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twostep/enumerate.hpp"
#include "twostep/forms.hpp"
#include "twostep/linalg.hpp"
#include "twostep/rng.hpp"

namespace twostep {

/// Largest k with 2n >= t(k - 1) + 2k, i.e. floor((2n + t) / (t + 2)). Requires t >= 2.
inline std::size_t bound_k(std::size_t n, std::size_t t) {
  if (t < 2) throw std::invalid_argument("bound_k: defined for t >= 2 only");
  return (2 * n + t) / (t + 2);
}

/// Maximal abelian subalgebra dimension of a generic algebra: floor((2n + t^2 + 3t) / (t + 2)).
inline std::size_t bound_s(std::size_t n, std::size_t t) {
  if (t < 2) throw std::invalid_argument("bound_s: defined for t >= 2 only");
  return (2 * n + t * t + 3 * t) / (t + 2);
}

/// Heisenberg algebra of odd dimension m: maximal commutative subalgebras have dimension (m + 1) / 2.
inline std::size_t heisenberg_max_abelian(std::size_t m) {
  if (m % 2 == 0) throw std::invalid_argument("heisenberg_max_abelian: dimension must be odd");
  return (m + 1) / 2;
}

/// Row i is y -> phi_i(y, x); its kernel is the set of y commuting with x.
template <ExactField F>
Matrix<F> commutation_matrix(const FormTuple<F>& phi, const Vector<F>& x) {
  if (x.size() != phi.n()) throw std::invalid_argument("commutation_matrix: length mismatch");
  Matrix<F> m(phi.field(), phi.t(), phi.n());
  for (std::size_t i = 0; i < phi.t(); ++i) m.set_row(i, phi[i].matrix() * x);
  return m;
}

template <ExactField F>
bool is_isotropic(const FormTuple<F>& phi, const Subspace<F>& w) {
  const auto basis = w.basis_vectors();
  for (const auto& f : phi.forms())
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = a + 1; b < basis.size(); ++b)
        if (!is_zero(f(basis[a], basis[b]))) return false;
  return true;
}

template <ExactField F>
struct IsotropicCertificate {
  Subspace<F> subspace;
  bool verified = false;
};

template <ExactField F>
IsotropicCertificate<F> certify_isotropic(const FormTuple<F>& phi, Subspace<F> w) {
  const bool ok = is_isotropic(phi, w);
  return {std::move(w), ok};
}

namespace detail {

/// Vectors y with phi_i(w, y) = 0 for every basis vector w and every i.
template <ExactField F>
Subspace<F> common_orthogonal(const FormTuple<F>& phi, const Subspace<F>& w) {
  Matrix<F> rows(phi.field(), 0, phi.n());
  for (const auto& v : w.basis_vectors()) rows = Matrix<F>::stack(rows, commutation_matrix(phi, v));
  return kernel_basis(rows);
}

template <ExactField F>
Subspace<F> greedy_run(const FormTuple<F>& phi, Rng* rng) {
  const F& field = phi.field();
  Subspace<F> w = Subspace<F>::zero(field, phi.n());
  for (;;) {
    const Subspace<F> k = common_orthogonal(phi, w);
    if (k.dim() == w.dim()) return w;  // w is maximal: its orthogonal is w itself
    Vector<F> pick;
    if (rng == nullptr) {
      for (const auto& v : k.basis_vectors())
        if (!w.contains(v)) {
          pick = v;
          break;
        }
    } else {
      do {
        pick = zero_vector(field, phi.n());
        for (const auto& v : k.basis_vectors()) {
          const auto c = field.from_int(rng->uniform(-3, 3));
          for (std::size_t i = 0; i < pick.size(); ++i) pick[i] += c * v[i];
        }
      } while (w.contains(pick));
    }
    auto rows = w.basis_vectors();
    rows.push_back(pick);
    w = Subspace<F>::span(field, phi.n(), rows);
  }
}

}  // namespace detail

/// Greedy maximal common isotropic subspace with randomized restarts.
///
/// Restart 0 extends by the first kernel basis vector (smallest pivot) outside the
/// current subspace; restart r > 0 extends by random combinations drawn from
/// derive_seed(seed, r). The largest result wins, ties going to the lowest restart.
/// Every run ends at a maximal subspace, of dimension at least ceil(n / (t + 1)).
template <ExactField F>
IsotropicCertificate<F> greedy_isotropic(const FormTuple<F>& phi, std::uint64_t seed, std::size_t restarts) {
  Subspace<F> best = detail::greedy_run<F>(phi, nullptr);
  for (std::size_t r = 1; r < restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    Subspace<F> w = detail::greedy_run<F>(phi, &rng);
    if (w.dim() > best.dim()) best = std::move(w);
  }
  return certify_isotropic(phi, std::move(best));
}

/// Exhaustive search for a k-dimensional common isotropic subspace of F_p^n.
inline std::optional<Subspace<PrimeField>> max_isotropic_fp(const FormTuple<PrimeField>& phi, std::size_t k,
                                                            std::uint64_t cap = kDefaultEnumerationCap) {
  SubspaceEnumerator subspaces(phi.field(), phi.n(), k, cap);
  std::optional<Subspace<PrimeField>> found;
  for_each_subspace(subspaces, [&](const Subspace<PrimeField>& w) {
    if (!is_isotropic(phi, w)) return true;
    found = w;
    return false;
  });
  return found;
}

/// Largest k admitting a common isotropic k-subspace over F_p, or nullopt if some
/// needed enumeration exceeds the cap.
inline std::optional<std::size_t> max_isotropic_dim_fp(const FormTuple<PrimeField>& phi,
                                                       std::uint64_t cap = kDefaultEnumerationCap) {
  std::size_t best = phi.n() > 0 ? 1 : 0;  // every line is isotropic
  try {
    for (std::size_t k = 2; k <= phi.n(); ++k) {
      if (!max_isotropic_fp(phi, k, cap)) break;
      best = k;
    }
  } catch (const EnumerationRefused&) {
    return std::nullopt;
  }
  return best;
}

/// The 3-tuple of 4x4 forms with no 2-dimensional common isotropic subspace over any real field.
template <ExactField F>
FormTuple<F> quaternion_example(const F& field) {
  return FormTuple<F>::from_ints(field, {
                                            {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
                                            {{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}},
                                            {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}},
                                        });
}

/// The four maximal minors of the commutation matrix M(x) of the quaternion tuple;
/// entry i deletes column i.
inline std::array<Rational, 4> quaternion_minors(const Vector<RationalField>& x) {
  const RationalField q;
  const Matrix<RationalField> m = commutation_matrix(quaternion_example(q), x);
  std::array<Rational, 4> out;
  for (std::size_t drop = 0; drop < 4; ++drop) {
    Matrix<RationalField> sub(q, 3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0, cc = 0; c < 4; ++c)
        if (c != drop) sub(r, cc++) = m(r, c);
    out[drop] = determinant(sub);
  }
  return out;
}

/// Checks minor_i = (-1)^i x_i (x_1^2 + x_2^2 + x_3^2 + x_4^2) (1-based i) at a rational point.
inline bool quaternion_minor_identity(const Vector<RationalField>& x) {
  if (x.size() != 4) throw std::invalid_argument("quaternion_minor_identity: need a 4-vector");
  const auto minors = quaternion_minors(x);
  Rational norm = 0;
  for (const auto& xi : x) norm += xi * xi;
  for (std::size_t i = 0; i < 4; ++i) {
    Rational expected = x[i] * norm;
    if (i % 2 == 0) expected = -expected;
    if (minors[i] != expected) return false;
  }
  return true;
}

}  // namespace twostep
