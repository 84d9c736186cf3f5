#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twostep/field.hpp"
#include "twostep/linalg.hpp"

namespace twostep {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Thrown when an exhaustive enumeration would visit more objects than allowed.
class EnumerationRefused : public std::runtime_error {
 public:
  EnumerationRefused(const Integer& count, std::uint64_t cap)
      : std::runtime_error("enumeration refused: " + count.get_str() + " subspaces exceed the cap of " +
                           std::to_string(cap)),
        count_(count) {}
  const Integer& count() const { return count_; }

 private:
  Integer count_;
};

/// Number of k-dimensional subspaces of F_q^n.
inline Integer gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q) {
  if (k > n) return 0;
  Integer num = 1, den = 1, qq = static_cast<unsigned long>(q);
  for (std::size_t i = 0; i < k; ++i) {
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), n - i);
    mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

/// Visits every `dim`-dimensional subspace of F_p^ambient exactly once.
///
/// Order is lexicographic on the pivot-column set, then on the free RREF
/// entries read row by row (first free entry most significant).
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(PrimeField field, std::size_t ambient, std::size_t dim,
                     std::uint64_t cap = kDefaultEnumerationCap)
      : field_(field), ambient_(ambient), dim_(dim) {
    count_ = gaussian_binomial(ambient, dim, field.characteristic());
    if (count_ > Integer(static_cast<unsigned long>(cap))) throw EnumerationRefused(count_, cap);
    if (dim > ambient) {
      done_ = true;
      return;
    }
    pivots_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) pivots_[i] = i;
    layout_free_positions();
  }

  const Integer& count() const { return count_; }

  std::optional<Subspace<PrimeField>> next() {
    if (done_) return std::nullopt;
    if (started_ && !advance()) {
      done_ = true;
      return std::nullopt;
    }
    started_ = true;
    return current();
  }

 private:
  void layout_free_positions() {
    free_.clear();
    std::vector<bool> is_pivot(ambient_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = pivots_[r] + 1; c < ambient_; ++c)
        if (!is_pivot[c]) free_.push_back({r, c});
    digits_.assign(free_.size(), 0);
  }

  bool advance() {
    // base-p counter over the free entries, last entry least significant
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < field_.characteristic()) return true;
      digits_[i] = 0;
    }
    return next_combination();
  }

  bool next_combination() {
    const std::size_t k = dim_;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (pivots_[i] < ambient_ - k + i) {
        ++pivots_[i];
        for (std::size_t j = i + 1; j < k; ++j) pivots_[j] = pivots_[j - 1] + 1;
        layout_free_positions();
        return true;
      }
    }
    return false;
  }

  Subspace<PrimeField> current() const {
    Matrix<PrimeField> m(field_, dim_, ambient_);
    for (std::size_t r = 0; r < dim_; ++r) m(r, pivots_[r]) = field_.one();
    for (std::size_t i = 0; i < free_.size(); ++i)
      m(free_[i].row, free_[i].col) = ModP(digits_[i], field_.characteristic());
    return Subspace<PrimeField>::span(m);
  }

  struct Position {
    std::size_t row;
    std::size_t col;
  };

  PrimeField field_;
  std::size_t ambient_;
  std::size_t dim_;
  Integer count_;
  std::vector<std::size_t> pivots_;
  std::vector<Position> free_;
  std::vector<std::uint32_t> digits_;
  bool started_ = false;
  bool done_ = false;
};

/// Calls visit(subspace) for each subspace until it returns false. Returns the number visited.
template <class Visit>
std::uint64_t for_each_subspace(SubspaceEnumerator& e, Visit&& visit) {
  std::uint64_t visited = 0;
  while (auto s = e.next()) {
    ++visited;
    if (!visit(*s)) break;
  }
  return visited;
}

}  // namespace twostep
