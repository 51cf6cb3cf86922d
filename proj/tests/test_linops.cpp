#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightpovm/errors.hpp"
#include "tightpovm/linops.hpp"
#include "tightpovm/rng.hpp"

using namespace tightpovm;

namespace {

Operator random_operator(int d, Rng& rng) {
  Operator g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = complex_gaussian(d, rng);
  return g;
}

}  // namespace

TEST(Linops, HsInnerIsTraceOfAdjointProduct) {
  Rng rng(1);
  const Operator a = random_operator(3, rng);
  const Operator b = random_operator(3, rng);
  const cplx expected = (a.adjoint() * b).trace();
  EXPECT_NEAR(std::abs(hs_inner(a, b) - expected), 0.0, 1e-12);
  EXPECT_NEAR(hs_norm_sq(a), (a.adjoint() * a).trace().real(), 1e-12);
}

TEST(Linops, VectorizeStacksColumns) {
  Rng rng(2);
  const Operator a = random_operator(3, rng);
  const OperatorKet v = vectorize(a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(v(i + 3 * j), a(i, j));
  EXPECT_EQ(devectorize(v), a);
  EXPECT_THROW(devectorize(OperatorKet::Zero(5)), DimensionMismatch);
}

TEST(Linops, KetBraActsAsRankOneMap) {
  Rng rng(3);
  const Operator a = random_operator(2, rng);
  const Operator b = random_operator(2, rng);
  const Operator x = random_operator(2, rng);
  const Operator expected = a * (b.adjoint() * x).trace();
  EXPECT_LT((ket_bra(a, b).apply(x) - expected).norm(), 1e-12);
}

TEST(Linops, IdentitySuperOps) {
  Rng rng(4);
  const int d = 3;
  const auto ids = identity_superops(d);
  const Operator x = random_operator(d, rng);
  EXPECT_LT((ids.identity.apply(x) - x).norm(), 1e-12);
  EXPECT_LT((ids.trace_map.apply(x) - x.trace() * Operator::Identity(d, d)).norm(), 1e-12);
  EXPECT_LT(ids.traceless.apply(Operator(Operator::Identity(d, d))).norm(), 1e-12);
  const Operator y = ids.traceless.apply(x);
  EXPECT_NEAR(std::abs(y.trace()), 0.0, 1e-12);
  EXPECT_LT((ids.traceless * ids.traceless - ids.traceless).matrix().norm(), 1e-12);
}

TEST(Linops, CompositionMatchesSequentialApplication) {
  Rng rng(5);
  const Operator a = random_operator(2, rng), b = random_operator(2, rng);
  const Operator c = random_operator(2, rng), e = random_operator(2, rng);
  const SuperOp s1 = ket_bra(a, b);
  const SuperOp s2 = ket_bra(c, e) + 2.0 * identity_superops(2).identity;
  const Operator x = random_operator(2, rng);
  EXPECT_LT(((s1 * s2).apply(x) - s1.apply(s2.apply(x))).norm(), 1e-12);
  EXPECT_LT((s1.adjoint().matrix() - s1.matrix().adjoint()).norm(), 1e-15);
}

TEST(Linops, EmptyDyadListIsZero) {
  const SuperOp z = superop_from_dyads(3, {});
  EXPECT_EQ(z.dim(), 3);
  EXPECT_EQ(z.matrix().norm(), 0.0);
  const Operator i2 = Operator::Identity(2, 2);
  EXPECT_THROW(superop_from_dyads(3, {{1.0, i2, i2}}), DimensionMismatch);
}

TEST(Linops, SymProjectorMatchesSwapOracle) {
  for (int d : {2, 3, 4}) {
    const auto p = sym_projector(d, 2);
    EXPECT_LT((p.matrix - oracle::sym2(d)).norm(), 1e-12) << "d=" << d;
  }
}

TEST(Linops, SymProjectorRankAndIdempotence) {
  for (int d : {2, 3}) {
    for (int t : {1, 2, 3, 4}) {
      const auto p = sym_projector(d, t);
      EXPECT_NEAR(p.matrix.trace().real(), static_cast<double>(binomial(d + t - 1, t)), 1e-10);
      EXPECT_LT((p.matrix * p.matrix - p.matrix).norm(), 1e-10);
    }
  }
  EXPECT_THROW(sym_projector(6, 4), SizeLimitExceeded);
  EXPECT_THROW(sym_projector(2, 5), PreconditionError);
}

TEST(Linops, HermEigAndInverse) {
  Rng rng(6);
  const int d = 2;
  // Positive definite superoperator: G G^dag + I.
  Eigen::MatrixXcd g(d * d, d * d);
  for (int c = 0; c < d * d; ++c) g.col(c) = complex_gaussian(d * d, rng);
  const SuperOp s(d, g * g.adjoint() + Eigen::MatrixXcd::Identity(d * d, d * d));
  const auto spec = herm_eig(s);
  for (Eigen::Index i = 1; i < spec.values.size(); ++i) EXPECT_LE(spec.values(i - 1), spec.values(i));
  EXPECT_GE(spec.values(0), 1.0 - 1e-10);
  const SuperOp inv = superop_inverse(s);
  EXPECT_LT(((inv * s).matrix() - Eigen::MatrixXcd::Identity(d * d, d * d)).norm(), 1e-10);
}

TEST(Linops, HermEigRejectsNonHermitian) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(SuperOp(2, m)), NotHermitian);
}

TEST(Linops, InverseRejectsSingular) {
  const auto ids = identity_superops(2);
  try {
    superop_inverse(ids.trace_map);
    FAIL() << "expected SingularSuperOp";
  } catch (const SingularSuperOp& e) {
    EXPECT_NEAR(e.eigenvalue(), 0.0, 1e-12);
  }
}

TEST(Linops, TensorPowerOrdering) {
  StateVector x(2);
  x << 1.0, cplx(0.0, 2.0);
  const auto v = tensor_power(x, 2);
  ASSERT_EQ(v.size(), 4);
  EXPECT_EQ(v(0), x(0) * x(0));
  EXPECT_EQ(v(1), x(0) * x(1));
  EXPECT_EQ(v(2), x(1) * x(0));
  EXPECT_EQ(v(3), x(1) * x(1));
}

TEST(Linops, SmallHelpers) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(4, 0), 1u);
  EXPECT_EQ(binomial(3, 4), 0u);
  Operator m(2, 2);
  m << 2.0, cplx(0, 1), cplx(0, -1), 2.0;
  EXPECT_TRUE(is_hermitian(m, 1e-12));
  EXPECT_NEAR(min_eigenvalue(m), 1.0, 1e-12);
  m(0, 1) = 3.0;
  EXPECT_FALSE(is_hermitian(m, 1e-12));
}
