#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twostep/enumerate.hpp"
#include "twostep/field.hpp"
#include "twostep/forms.hpp"
#include "twostep/linalg.hpp"
#include "twostep/rng.hpp"

namespace twostep {

/// x = v_part + s_part with v_part in V (coordinates in e_1..e_n) and s_part in S (z_1..z_t).
template <ExactField F>
struct LieElement {
  Vector<F> v;
  Vector<F> s;

  friend LieElement operator+(const LieElement& a, const LieElement& b) {
    check(a, b);
    LieElement r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
    for (std::size_t i = 0; i < r.s.size(); ++i) r.s[i] += b.s[i];
    return r;
  }
  friend LieElement operator-(const LieElement& a, const LieElement& b) { return a + (-b); }
  LieElement operator-() const {
    LieElement r = *this;
    for (auto& x : r.v) x = -x;
    for (auto& x : r.s) x = -x;
    return r;
  }
  friend LieElement operator*(const typename F::Scalar& c, const LieElement& a) {
    LieElement r = a;
    for (auto& x : r.v) x *= c;
    for (auto& x : r.s) x *= c;
    return r;
  }
  friend bool operator==(const LieElement&, const LieElement&) = default;

 private:
  static void check(const LieElement& a, const LieElement& b) {
    if (a.v.size() != b.v.size() || a.s.size() != b.s.size())
      throw std::invalid_argument("LieElement: dimension mismatch");
  }
};

/// The 2-step nilpotent Lie algebra L(phi) = V + S with [x, y] = sum_i phi_i(x_V, y_V) z_i.
template <ExactField F>
class LieAlgebra2 {
 public:
  /// Requires independent forms, so that S is the derived subalgebra.
  explicit LieAlgebra2(FormTuple<F> phi) : phi_(std::move(phi)) {
    if (!is_independent(phi_)) throw std::invalid_argument("LieAlgebra2: forms are linearly dependent");
  }

  /// Builds the algebra without the independence check; for probing degenerate tuples.
  static LieAlgebra2 unchecked(FormTuple<F> phi) { return LieAlgebra2(std::move(phi), Unchecked{}); }

  const FormTuple<F>& forms() const { return phi_; }
  const F& field() const { return phi_.field(); }
  std::size_t n() const { return phi_.n(); }
  std::size_t t() const { return phi_.t(); }

  LieElement<F> zero() const { return {zero_vector(field(), n()), zero_vector(field(), t())}; }
  LieElement<F> e(std::size_t i) const { return {unit_vector(field(), n(), i), zero_vector(field(), t())}; }
  LieElement<F> z(std::size_t i) const { return {zero_vector(field(), n()), unit_vector(field(), t(), i)}; }

  LieElement<F> element(Vector<F> v, Vector<F> s) const {
    if (v.size() != n() || s.size() != t()) throw std::invalid_argument("LieAlgebra2::element: dimension mismatch");
    return {std::move(v), std::move(s)};
  }

  bool owns(const LieElement<F>& x) const { return x.v.size() == n() && x.s.size() == t(); }

 private:
  struct Unchecked {};
  LieAlgebra2(FormTuple<F> phi, Unchecked) : phi_(std::move(phi)) {}

  FormTuple<F> phi_;
};

template <ExactField F>
LieElement<F> bracket(const LieAlgebra2<F>& l, const LieElement<F>& x, const LieElement<F>& y) {
  if (!l.owns(x) || !l.owns(y)) throw std::invalid_argument("bracket: element does not belong to the algebra");
  LieElement<F> r = l.zero();
  for (std::size_t i = 0; i < l.t(); ++i) r.s[i] = l.forms()[i](x.v, y.v);
  return r;
}

/// {c in V : phi_i(c, e_j) = 0 for all i, j}; the full center is this plus S.
template <ExactField F>
Subspace<F> center(const LieAlgebra2<F>& l) {
  Matrix<F> stacked(l.field(), 0, l.n());
  for (const auto& f : l.forms().forms()) stacked = Matrix<F>::stack(stacked, f.matrix());
  return kernel_basis(stacked);
}

template <ExactField F>
std::size_t center_dim(const LieAlgebra2<F>& l) {
  return center(l).dim() + l.t();
}

/// dim [L, L]: the rank of the vectorized forms.
template <ExactField F>
std::size_t derived_dim(const LieAlgebra2<F>& l) {
  return rank(l.forms().vectorization());
}

/// Generic center dimension: 2 when t = 1 and n is odd, otherwise t (Z(L) = [L, L]).
constexpr std::size_t predicted_center_dim(std::size_t n, std::size_t t) { return (t == 1 && n % 2 == 1) ? 2 : t; }

/// L / h for a subspace h of S with dim h < t, re-expressed in N_2(n, t - dim h).
///
/// The new basis of S is the standard vectors outside the pivots of h followed by
/// the basis of h; forms are rewritten with the coordinate change C = B^{-1} and the
/// trailing dim h forms (those landing in h) are dropped.
template <ExactField F>
LieAlgebra2<F> quotient_central(const LieAlgebra2<F>& l, const Subspace<F>& h) {
  const std::size_t t = l.t();
  if (h.ambient_dim() != t) throw std::invalid_argument("quotient_central: h must be a subspace of S");
  const std::size_t k = h.dim();
  if (k >= t) throw std::invalid_argument("quotient_central: dim h must be < t");
  const F& field = l.field();
  std::vector<bool> is_pivot(t, false);
  for (auto p : h.pivots()) is_pivot[p] = true;
  Matrix<F> b(field, t, t);  // columns: new basis vectors in old coordinates
  std::size_t col = 0;
  for (std::size_t i = 0; i < t; ++i)
    if (!is_pivot[i]) b(i, col++) = field.one();
  for (std::size_t r = 0; r < k; ++r, ++col)
    for (std::size_t i = 0; i < t; ++i) b(i, col) = h.basis()(r, i);
  const Matrix<F> c = inverse(b);
  std::vector<AlternatingForm<F>> kept;
  for (std::size_t j = 0; j < t - k; ++j) {
    Matrix<F> acc(field, l.n(), l.n());
    for (std::size_t i = 0; i < t; ++i)
      if (!is_zero(c(j, i))) acc += c(j, i) * l.forms()[i].matrix();
    kept.emplace_back(std::move(acc));
  }
  return LieAlgebra2<F>(FormTuple<F>(field, l.n(), std::move(kept)));
}

/// dim(N_0(U) meet span(phi)) >= t0: L maps onto a member of N_2(n0, t0) with kernel meeting V in U.
template <ExactField F>
bool ms_certificate(const LieAlgebra2<F>& l, const Subspace<F>& u, std::size_t n0, std::size_t t0) {
  if (n0 > l.n() || u.ambient_dim() != l.n() || u.dim() != l.n() - n0)
    throw std::invalid_argument("ms_certificate: U must have dimension n - n0");
  if (t0 < 1) throw std::invalid_argument("ms_certificate: t0 must be >= 1");
  if (t0 > l.t() || t0 > form_space_dim(n0)) return false;
  return intersect_spans(n0_space(u, l.n()), l.forms().span()).dim() >= t0;
}

/// Exhaustive search over F_p.
struct ExhaustiveFp {
  std::uint32_t prime = 0;  // 0 selects default_prime()
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Randomized search over Q; can only report found / not found.
struct RandomizedQ {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  long bound = 5;
};

using MsStrategy = std::variant<ExhaustiveFp, RandomizedQ>;
using MsCertificate = std::variant<Subspace<PrimeField>, Subspace<RationalField>>;

struct MsSearchResult {
  std::optional<MsCertificate> certificate;
  std::string field;        // "Q" or "F<p>"
  bool definitive = false;  // true only for exhaustive search (over F_p)
  std::uint64_t examined = 0;
};

/// Raised when a tuple loses independence modulo the chosen prime.
class DegenerateReduction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Smallest prime p >= 3 for which the tuple reduces to an independent tuple.
inline std::uint32_t default_prime(const FormTuple<RationalField>& phi, std::uint32_t start = 3) {
  for (std::uint32_t p = start;; ++p) {
    if (!is_prime(p)) continue;
    try {
      if (is_independent(reduce_mod(phi, PrimeField(p)))) return p;
    } catch (const ReductionError&) {
    }
  }
}

inline LieAlgebra2<PrimeField> reduce_algebra(const LieAlgebra2<RationalField>& l, const PrimeField& fp) {
  FormTuple<PrimeField> reduced = [&] {
    try {
      return reduce_mod(l.forms(), fp);
    } catch (const ReductionError& e) {
      throw DegenerateReduction(e.what());
    }
  }();
  if (!is_independent(reduced))
    throw DegenerateReduction("forms become dependent modulo " + std::to_string(fp.characteristic()));
  return LieAlgebra2<PrimeField>(std::move(reduced));
}

/// Enumerates every (n - n0)-dimensional U of F_p^n; the first certificate found is returned.
inline MsSearchResult ms_search_exhaustive(const LieAlgebra2<PrimeField>& l, std::size_t n0, std::size_t t0,
                                           std::uint64_t cap = kDefaultEnumerationCap) {
  if (n0 > l.n()) throw std::invalid_argument("ms_search: n0 > n");
  MsSearchResult result;
  result.field = l.field().name();
  result.definitive = true;
  SubspaceEnumerator subspaces(l.field(), l.n(), l.n() - n0, cap);
  result.examined = for_each_subspace(subspaces, [&](const Subspace<PrimeField>& u) {
    if (!ms_certificate(l, u, n0, t0)) return true;
    result.certificate = u;
    return false;
  });
  return result;
}

/// Samples random U over Q; trial i uses the seed derive_seed(seed, i).
inline MsSearchResult ms_search_randomized(const LieAlgebra2<RationalField>& l, std::size_t n0, std::size_t t0,
                                           const RandomizedQ& cfg) {
  if (n0 > l.n()) throw std::invalid_argument("ms_search: n0 > n");
  MsSearchResult result;
  result.field = "Q";
  const RationalField q;
  const std::size_t k = l.n() - n0;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, trial));
    Subspace<RationalField> u = Subspace<RationalField>::zero(q, l.n());
    do {
      Matrix<RationalField> m(q, k, l.n());
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < l.n(); ++c) m(r, c) = q.from_int(rng.uniform(-cfg.bound, cfg.bound));
      u = Subspace<RationalField>::span(m);
    } while (u.dim() != k);
    ++result.examined;
    if (ms_certificate(l, u, n0, t0)) {
      result.certificate = u;
      break;
    }
  }
  return result;
}

inline MsSearchResult ms_search(const LieAlgebra2<RationalField>& l, std::size_t n0, std::size_t t0,
                                const MsStrategy& strategy) {
  if (n0 > l.n()) throw std::invalid_argument("ms_search: n0 > n");
  if (t0 > form_space_dim(n0)) throw std::invalid_argument("ms_search: t0 > n0(n0-1)/2");
  if (const auto* ex = std::get_if<ExhaustiveFp>(&strategy)) {
    const std::uint32_t p = ex->prime ? ex->prime : default_prime(l.forms());
    return ms_search_exhaustive(reduce_algebra(l, PrimeField(p)), n0, t0, ex->cap);
  }
  return ms_search_randomized(l, n0, t0, std::get<RandomizedQ>(strategy));
}

struct MsThresholds {
  Rational generic_absence_below;   // generic algebras lack MS(n0, t0) when t is strictly below this
  Rational guaranteed_at_or_above;  // every algebra has MS(n0, t0) when t reaches this
};

inline MsThresholds ms_thresholds(std::size_t n, std::size_t n0, std::size_t t0) {
  if (t0 < 1 || t0 > form_space_dim(n0)) throw std::invalid_argument("ms_thresholds: need 1 <= t0 <= n0(n0-1)/2");
  if (n0 > n) throw std::invalid_argument("ms_thresholds: need n0 <= n");
  const Rational nn(static_cast<long>(n)), m0(static_cast<long>(n0)), s0(static_cast<long>(t0));
  const Rational big(static_cast<long>(form_space_dim(n))), small(static_cast<long>(form_space_dim(n0)));
  MsThresholds th;
  th.generic_absence_below = big - nn * m0 / s0 + m0 * m0 / s0 + s0 - small;
  th.guaranteed_at_or_above = big - small + s0;
  return th;
}

/// t below this value: a generic algebra has no surjection onto a non-abelian algebra of dimension N.
inline Rational corollary_bound(std::size_t n, std::size_t big_n) {
  if (big_n >= n) throw std::invalid_argument("corollary_bound: need N < n");
  const Rational nn(static_cast<long>(n)), bn(static_cast<long>(big_n));
  return nn * nn / 2 - nn * (bn - Rational(1, 2)) + bn * (bn - 1) / 2 + 1;
}

}  // namespace twostep
