#include <gtest/gtest.h>

#include "twostep/isotropy.hpp"

using namespace twostep;

namespace {

const RationalField Q;
using Form = AlternatingForm<RationalField>;
using Tuple = FormTuple<RationalField>;

/// Largest k with 2n >= t(k - 1) + 2k, by direct search.
std::size_t bound_k_by_search(std::size_t n, std::size_t t) {
  std::size_t k = 0;
  while (2 * n >= t * k + 2 * (k + 1)) ++k;  // tests k + 1
  return k;
}

/// Oracle isotropy check on an explicit spanning set: every form vanishes on every pair.
template <ExactField F>
bool isotropic_by_pairs(const FormTuple<F>& phi, const std::vector<Vector<F>>& vs) {
  for (const auto& f : phi.forms())
    for (const auto& x : vs)
      for (const auto& y : vs)
        if (!is_zero(evaluate(f, x, y))) return false;
  return true;
}

Vector<RationalField> random_rational_point(Rng& rng) {
  Vector<RationalField> x;
  for (int i = 0; i < 4; ++i) {
    Rational q(rng.uniform(-50, 50), rng.uniform(1, 30));
    q.canonicalize();
    x.push_back(q);
  }
  return x;
}

}  // namespace

TEST(Bounds, Examples) {
  EXPECT_EQ(bound_k(4, 3), 2u);
  EXPECT_EQ(bound_k(6, 2), 3u);
  EXPECT_EQ(bound_s(4, 3), 5u);
  EXPECT_EQ(bound_s(6, 2), 5u);
  // 2n = t(k-1) + 2k exactly: t = 2, k = 3 gives 2n = 10
  EXPECT_EQ(bound_k(5, 2), 3u);
  EXPECT_THROW(bound_k(4, 1), std::invalid_argument);
  EXPECT_THROW(bound_s(4, 1), std::invalid_argument);
  EXPECT_EQ(heisenberg_max_abelian(3), 2u);
  EXPECT_EQ(heisenberg_max_abelian(7), 4u);
  EXPECT_THROW(heisenberg_max_abelian(4), std::invalid_argument);
}

TEST(Bounds, SweepAgainstSearchAndShift) {
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t t = 2; t <= form_space_dim(n); ++t) {
      EXPECT_EQ(bound_k(n, t), bound_k_by_search(n, t)) << n << " " << t;
      EXPECT_EQ(bound_s(n, t), bound_k(n, t) + t) << n << " " << t;
    }
}

TEST(CommutationMatrix, QuaternionMatchesPrintedMatrix) {
  Rng rng(51);
  const auto phi = quaternion_example(Q);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_rational_point(rng);
    const auto& [x1, x2, x3, x4] = std::tie(x[0], x[1], x[2], x[3]);
    Matrix<RationalField> printed(Q, 3, 4);
    printed.set_row(0, {x2, -x1, x4, -x3});
    printed.set_row(1, {x3, -x4, -x1, x2});
    printed.set_row(2, {x4, x3, -x2, -x1});
    EXPECT_EQ(commutation_matrix(phi, x), printed);
    EXPECT_TRUE(is_zero_vector<RationalField>(commutation_matrix(phi, x) * x));
  }
  EXPECT_TRUE(commutation_matrix(phi, zero_vector(Q, 4)).is_zero_matrix());
  EXPECT_THROW(commutation_matrix(phi, zero_vector(Q, 3)), std::invalid_argument);
}

TEST(CommutationMatrix, HeisenbergKernel) {
  const Tuple h(Q, 2, {Form::basis_form(Q, 2, 0, 1)});
  const auto m = commutation_matrix(h, unit_vector(Q, 2, 0));
  EXPECT_EQ(m, Matrix<RationalField>::from_ints(Q, {{0, -1}}));
  EXPECT_EQ(kernel_basis(m), Subspace<RationalField>::span(Q, 2, {unit_vector(Q, 2, 0)}));
}

TEST(Quaternion, PrintedEntries) {
  const auto phi = quaternion_example(Q);
  EXPECT_EQ(phi.t(), 3u);
  EXPECT_EQ(phi[0].matrix()(0, 1), 1);
  EXPECT_EQ(phi[2].matrix()(3, 0), -1);
  const std::vector<std::vector<std::vector<long>>> printed{
      {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}}};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_TRUE(is_alternating(phi[k].matrix()));
    EXPECT_EQ(phi[k].matrix(), Matrix<RationalField>::from_ints(Q, printed[k]));
  }
}

TEST(Quaternion, MinorIdentity) {
  const auto m = quaternion_minors({1, 0, 0, 0});
  EXPECT_EQ(m[0], -1);
  EXPECT_EQ(m[1], 0);
  EXPECT_EQ(m[2], 0);
  EXPECT_EQ(m[3], 0);
  EXPECT_TRUE(quaternion_minor_identity({1, 0, 0, 0}));
  EXPECT_TRUE(quaternion_minor_identity({0, 0, 0, 0}));
  for (const auto& v : quaternion_minors({0, 0, 0, 0})) EXPECT_EQ(v, 0);
  Rng rng(52);
  for (int trial = 0; trial < 1000; ++trial) EXPECT_TRUE(quaternion_minor_identity(random_rational_point(rng)));
  EXPECT_THROW(quaternion_minor_identity({1, 2, 3}), std::invalid_argument);
}

TEST(Isotropic, CertificateMatchesPairOracle) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.uniform(0, 3);
    const auto phi = random_tuple(n, 2, 3, rng);
    std::vector<Vector<RationalField>> vs;
    for (int i = 0; i < 2; ++i) {
      Vector<RationalField> v;
      for (std::size_t c = 0; c < n; ++c) v.emplace_back(rng.uniform(-1, 1));
      vs.push_back(v);
    }
    const auto w = Subspace<RationalField>::span(Q, n, vs);
    EXPECT_EQ(is_isotropic(phi, w), isotropic_by_pairs(phi, vs));
    EXPECT_EQ(certify_isotropic(phi, w).verified, is_isotropic(phi, w));
  }
}

TEST(Greedy, Examples) {
  const Tuple h(Q, 2, {Form::basis_form(Q, 2, 0, 1)});
  EXPECT_EQ(greedy_isotropic(h, 1, 5).subspace.dim(), 1u);
  const auto q = greedy_isotropic(quaternion_example(Q), 7, 100);
  EXPECT_TRUE(q.verified);
  EXPECT_EQ(q.subspace.dim(), 1u);
}

TEST(Greedy, GuaranteeAndVerificationProperty) {
  Rng rng(54);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.uniform(0, 4);
    const std::size_t t = 2 + rng.uniform(0, n == 3 ? 1 : 2);
    const auto phi = random_tuple(n, t, 20, rng);
    const auto cert = greedy_isotropic(phi, rng.next(), 4);
    EXPECT_TRUE(cert.verified);
    EXPECT_TRUE(isotropic_by_pairs(phi, cert.subspace.basis_vectors()));
    EXPECT_GE(cert.subspace.dim(), (n + t) / (t + 1));
    EXPECT_LE(cert.subspace.dim(), bound_k(n, t));
  }
}

TEST(Greedy, DeterministicGivenSeed) {
  const auto phi = random_tuple(6, 2, 20, std::uint64_t{5});
  EXPECT_EQ(greedy_isotropic(phi, 99, 10).subspace, greedy_isotropic(phi, 99, 10).subspace);
}

TEST(Greedy, SixTwoMeetsGuaranteeAndTheOracleReachesTheBound) {
  // Over Q a random greedy extension reaches 3 only on a thin set of choices, so only the
  // guarantee is asserted; the F_5 oracle shows the bound itself is attained after reduction.
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto cert = greedy_isotropic(random_tuple(6, 2, 20, s), s, 20);
    EXPECT_TRUE(cert.verified);
    EXPECT_GE(cert.subspace.dim(), 2u);
  }
  const auto reduced = reduce_mod(random_tuple(6, 2, 20, std::uint64_t{0}), PrimeField(5));
  const auto w = max_isotropic_fp(reduced, 3, 3'000'000);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(isotropic_by_pairs(reduced, w->basis_vectors()));
}

TEST(Oracle, QuaternionOverF5AndF3) {
  const auto phi5 = reduce_mod(quaternion_example(Q), PrimeField(5));
  const auto plane5 = max_isotropic_fp(phi5, 2);
  ASSERT_TRUE(plane5.has_value());
  EXPECT_TRUE(isotropic_by_pairs(phi5, plane5->basis_vectors()));
  // over F_3 the sum of four squares also has nontrivial zeros, e.g. (1, 1, 1, 0)
  const auto phi3 = reduce_mod(quaternion_example(Q), PrimeField(3));
  const auto plane3 = max_isotropic_fp(phi3, 2);
  ASSERT_TRUE(plane3.has_value());
  EXPECT_TRUE(isotropic_by_pairs(phi3, plane3->basis_vectors()));
  EXPECT_EQ(max_isotropic_dim_fp(phi5), 2u);
}

TEST(Oracle, LinesAlwaysAndCap) {
  const auto phi = reduce_mod(random_tuple(4, 3, 20, std::uint64_t{1}), PrimeField(3));
  EXPECT_TRUE(max_isotropic_fp(phi, 1).has_value());
  EXPECT_THROW(max_isotropic_fp(phi, 2, 10), EnumerationRefused);
  EXPECT_FALSE(max_isotropic_dim_fp(phi, 10).has_value());
}
