#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twostep/forms.hpp"
#include "twostep/lie_algebra.hpp"

namespace twostep {

/// Normal form a_1^{k_1} ... a_n^{k_n} b_1^{l_1} ... b_t^{l_t}.
struct GroupElement {
  std::vector<Integer> a;
  std::vector<Integer> b;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// G(phi) for an integer form tuple with forms independent over Q.
class GroupPresentation {
 public:
  explicit GroupPresentation(FormTuple<RationalField> phi) : phi_(std::move(phi)) {
    if (!has_integer_entries(phi_)) throw std::invalid_argument("GroupPresentation: forms must have integer entries");
    if (!is_independent(phi_)) throw std::invalid_argument("GroupPresentation: forms are linearly dependent");
    const std::size_t n = phi_.n();
    table_.resize(phi_.t() * n * n);
    for (std::size_t k = 0; k < phi_.t(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table_[(k * n + i) * n + j] = phi_[k].matrix()(i, j).get_num();
  }

  static GroupPresentation heisenberg() {
    const RationalField q;
    return GroupPresentation(FormTuple<RationalField>::from_ints(q, {{{0, 1}, {-1, 0}}}));
  }

  const FormTuple<RationalField>& forms() const { return phi_; }
  std::size_t n() const { return phi_.n(); }
  std::size_t t() const { return phi_.t(); }

  /// phi_k(a_i, a_j)
  const Integer& phi(std::size_t k, std::size_t i, std::size_t j) const { return table_[(k * n() + i) * n() + j]; }

  GroupElement identity() const { return {std::vector<Integer>(n(), 0), std::vector<Integer>(t(), 0)}; }
  GroupElement a(std::size_t i, long power = 1) const {
    GroupElement g = identity();
    g.a.at(i) = power;
    return g;
  }
  GroupElement b(std::size_t j, long power = 1) const {
    GroupElement g = identity();
    g.b.at(j) = power;
    return g;
  }

  bool owns(const GroupElement& g) const { return g.a.size() == n() && g.b.size() == t(); }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  FormTuple<RationalField> phi_;
  std::vector<Integer> table_;
};

namespace detail {

inline void check_owned(const GroupPresentation& gp, const GroupElement& g) {
  if (!gp.owns(g)) throw std::invalid_argument("group element does not match the presentation");
}

/// sum_{i>j} x_i y_j phi_k(a_i, a_j)
inline Integer lower_pairing(const GroupPresentation& gp, std::size_t k, const std::vector<Integer>& x,
                             const std::vector<Integer>& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < gp.n(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < i; ++j) s += x[i] * y[j] * gp.phi(k, i, j);
  }
  return s;
}

}  // namespace detail

inline GroupElement multiply(const GroupPresentation& gp, const GroupElement& g, const GroupElement& h) {
  detail::check_owned(gp, g);
  detail::check_owned(gp, h);
  GroupElement r = gp.identity();
  for (std::size_t i = 0; i < gp.n(); ++i) r.a[i] = g.a[i] + h.a[i];
  for (std::size_t k = 0; k < gp.t(); ++k) r.b[k] = g.b[k] + h.b[k] + detail::lower_pairing(gp, k, g.a, h.a);
  return r;
}

inline GroupElement inverse(const GroupPresentation& gp, const GroupElement& g) {
  detail::check_owned(gp, g);
  GroupElement r = gp.identity();
  for (std::size_t i = 0; i < gp.n(); ++i) r.a[i] = -g.a[i];
  for (std::size_t k = 0; k < gp.t(); ++k) r.b[k] = -g.b[k] + detail::lower_pairing(gp, k, g.a, g.a);
  return r;
}

inline GroupElement power(const GroupPresentation& gp, const GroupElement& g, long e) {
  GroupElement base = e < 0 ? inverse(gp, g) : g;
  GroupElement r = gp.identity();
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r = multiply(gp, r, base);
  return r;
}

/// [g, h] = g^-1 h^-1 g h, via the bilinear closed form: b_l = sum_{i,j} g_i h_j phi_l(a_i, a_j).
inline GroupElement commutator(const GroupPresentation& gp, const GroupElement& g, const GroupElement& h) {
  detail::check_owned(gp, g);
  detail::check_owned(gp, h);
  GroupElement r = gp.identity();
  for (std::size_t l = 0; l < gp.t(); ++l)
    for (std::size_t i = 0; i < gp.n(); ++i) {
      if (sgn(g.a[i]) == 0) continue;
      for (std::size_t j = 0; j < gp.n(); ++j) r.b[l] += g.a[i] * h.a[j] * gp.phi(l, i, j);
    }
  return r;
}

/// g^-1 h^-1 g h by repeated multiplication.
inline GroupElement commutator_by_product(const GroupPresentation& gp, const GroupElement& g, const GroupElement& h) {
  return multiply(gp, multiply(gp, multiply(gp, inverse(gp, g), inverse(gp, h)), g), h);
}

/// rank Z(G) = dim Z(L(phi)) over Q.
inline std::size_t center_rank(const GroupPresentation& gp) {
  return center_dim(LieAlgebra2<RationalField>(gp.forms()));
}

using MalcevElement = LieElement<RationalField>;

/// x o y = x + y + [x, y] / 2.
inline MalcevElement bch_mul(const LieAlgebra2<RationalField>& l, const MalcevElement& x, const MalcevElement& y) {
  return x + y + Rational(1, 2) * bracket(l, x, y);
}

inline MalcevElement bch_inverse(const MalcevElement& x) { return -x; }

/// (k_1 a_1) o (k_2 a_2) o ... o (k_n a_n) o (sum_j l_j z_j), folded from the left.
inline MalcevElement malcev_map(const GroupPresentation& gp, const LieAlgebra2<RationalField>& l,
                                const GroupElement& g) {
  detail::check_owned(gp, g);
  MalcevElement acc = l.zero();
  for (std::size_t i = 0; i < gp.n(); ++i) acc = bch_mul(l, acc, Rational(g.a[i]) * l.e(i));
  MalcevElement central = l.zero();
  for (std::size_t j = 0; j < gp.t(); ++j) central.s[j] = Rational(g.b[j]);
  return bch_mul(l, acc, central);
}

/// Integer generators a^v for the basis vectors v of a rational subspace of V, denominators cleared.
inline std::vector<GroupElement> integral_generators(const GroupPresentation& gp, const Subspace<RationalField>& w) {
  if (w.ambient_dim() != gp.n()) throw std::invalid_argument("integral_generators: wrong ambient dimension");
  std::vector<GroupElement> out;
  for (const auto& v : w.basis_vectors()) {
    Integer lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    GroupElement g = gp.identity();
    for (std::size_t i = 0; i < v.size(); ++i) g.a[i] = v[i].get_num() * (lcm / v[i].get_den());
    out.push_back(std::move(g));
  }
  return out;
}

/// Text form "a1^k1 ... an^kn b1^l1 ... bt^lt", zero exponents omitted; the identity prints as "1".
inline std::string format_element(const GroupElement& g) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](char letter, std::size_t i, const Integer& e) {
    if (sgn(e) == 0) return;
    os << (first ? "" : " ") << letter << (i + 1) << '^' << e.get_str();
    first = false;
  };
  for (std::size_t i = 0; i < g.a.size(); ++i) emit('a', i, g.a[i]);
  for (std::size_t j = 0; j < g.b.size(); ++j) emit('b', j, g.b[j]);
  return first ? "1" : os.str();
}

/// Parses the text form. Generators must appear in normal-form order, each at most once;
/// a bare generator means exponent 1.
inline GroupElement parse_element(const GroupPresentation& gp, const std::string& text) {
  GroupElement g = gp.identity();
  std::istringstream in(text);
  std::string tok;
  std::size_t last = 0;  // position in normal-form order, 1-based
  bool any = false;
  while (in >> tok) {
    if (tok == "1" && !any) {
      any = true;
      last = gp.n() + gp.t() + 1;
      continue;
    }
    auto bad = [&](const std::string& why) { return std::invalid_argument("parse_element: '" + tok + "': " + why); };
    if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b')) throw bad("expected a<i> or b<j>");
    const auto caret = tok.find('^');
    const std::string index_text = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (index_text.empty() || !std::all_of(index_text.begin(), index_text.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw bad("bad generator index");
    const std::size_t index = std::stoul(index_text);
    const std::size_t limit = tok[0] == 'a' ? gp.n() : gp.t();
    if (index < 1 || index > limit) throw bad("generator index out of range");
    Integer exponent = 1;
    if (caret != std::string::npos) {
      if (exponent.set_str(tok.substr(caret + 1), 10) != 0) throw bad("bad exponent");
    }
    const std::size_t order = (tok[0] == 'a' ? 0 : gp.n()) + index;
    if (order <= last) throw bad("generators must appear once each, in normal-form order");
    last = order;
    any = true;
    (tok[0] == 'a' ? g.a : g.b)[index - 1] = exponent;
  }
  return g;
}

}  // namespace twostep
