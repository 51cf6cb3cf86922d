#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tightpovm/constructions.hpp"
#include "tightpovm/errors.hpp"

using namespace tightpovm;

TEST(Constructions, DisplacementsAreUnitaryAndOrthogonal) {
  for (int d : {2, 3, 4}) {
    const auto ds = wh_displacements(d);
    ASSERT_EQ(ds.size(), static_cast<std::size_t>(d * d));
    for (std::size_t a = 0; a < ds.size(); ++a) {
      EXPECT_LT((ds[a] * ds[a].adjoint() - Operator::Identity(d, d)).norm(), 1e-12);
      for (std::size_t b = 0; b < ds.size(); ++b) {
        const cplx ip = (ds[a].adjoint() * ds[b]).trace();
        EXPECT_NEAR(std::abs(ip), a == b ? d : 0.0, 1e-12);
      }
    }
  }
  EXPECT_THROW(wh_displacements(1), PreconditionError);
}

TEST(Constructions, DisplacementIndexing) {
  const auto ds = wh_displacements(3);
  // D_{1,0} = X shifts |0> to |1>; D_{0,1} = Z is diagonal.
  EXPECT_NEAR(std::abs(ds[3](1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(ds[1](0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::arg(ds[1](1, 1)), 2.0 * M_PI / 3.0, 1e-12);
}

TEST(Constructions, SicOverlaps) {
  for (int d : {2, 3, 4}) {
    const auto fid = sic_fiducial(d);
    EXPECT_TRUE(fid.certified) << "d=" << d << " dispersion " << fid.overlap_dispersion;
    EXPECT_EQ(fid.source, d <= 3 ? FiducialSource::analytic : FiducialSource::numerical);
    const auto orbit = wh_orbit(fid.coords);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (std::size_t j = i + 1; j < orbit.size(); ++j)
        EXPECT_NEAR(std::norm(oracle::inner(orbit[i], orbit[j])), 1.0 / (d + 1), 1e-9);
    EXPECT_NEAR(orbit_potential(fid.coords), (d - 1.0) / (d + 1.0), 1e-9);
  }
}

TEST(Constructions, SicPovmSumsToIdentity) {
  const auto f = sic_povm(3);
  ASSERT_EQ(f.size(), 9u);
  Operator sum = Operator::Zero(3, 3);
  for (const auto& e : f.elements()) {
    sum += e;
    EXPECT_NEAR(e.trace().real(), 1.0 / 3.0, 1e-12);
  }
  EXPECT_LT((sum - Operator::Identity(3, 3)).norm(), 1e-12);
  EXPECT_EQ(f.labels()[4], "D1,1");
}

TEST(Constructions, UncertifiedFiducialIsRejected) {
  FiducialVector fv = sic_fiducial(2);
  fv.certified = false;
  EXPECT_THROW(sic_povm(fv), NotCertified);
}

TEST(Constructions, MubOverlapTable) {
  for (int p : {2, 3, 5, 7}) {
    const auto fam = mub_family(p);
    ASSERT_EQ(fam.bases.size(), static_cast<std::size_t>(p + 1));
    for (std::size_t l = 0; l < fam.bases.size(); ++l)
      for (std::size_t m = 0; m < fam.bases.size(); ++m)
        for (int j = 0; j < p; ++j)
          for (int k = 0; k < p; ++k) {
            const double ov = std::norm(oracle::inner(fam.bases[l][j], fam.bases[m][k]));
            const double expected = l == m ? (j == k ? 1.0 : 0.0) : 1.0 / p;
            EXPECT_NEAR(ov, expected, 1e-10);
          }
  }
}

TEST(Constructions, MubPovmLayout) {
  const auto f = mub_povm(3);
  ASSERT_EQ(f.size(), 12u);
  EXPECT_EQ(f.labels()[5], "b1_2");
  Operator sum = Operator::Zero(3, 3);
  for (const auto& e : f.elements()) sum += e;
  EXPECT_LT((sum - Operator::Identity(3, 3)).norm(), 1e-12);
  EXPECT_THROW(mub_povm(4), PreconditionError);
  EXPECT_THROW(mub_family(1), PreconditionError);
}

TEST(Constructions, PrimeTest) {
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
}

TEST(Constructions, RandomRankOnePovm) {
  const auto f = random_rank_one_povm(3, 7, 11);
  ASSERT_EQ(f.size(), 7u);
  Operator sum = Operator::Zero(3, 3);
  for (const auto& e : f.elements()) {
    sum += e;
    // Rank one: tr(F^2) = (tr F)^2.
    const double tau = e.trace().real();
    EXPECT_NEAR((e * e).trace().real(), tau * tau, 1e-12);
  }
  EXPECT_LT((sum - Operator::Identity(3, 3)).norm(), 1e-10);
  const auto g = random_rank_one_povm(3, 7, 11);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_TRUE(f.elements()[i] == g.elements()[i]);
  EXPECT_THROW(random_rank_one_povm(3, 2, 1), PreconditionError);
}

TEST(Constructions, BasisPovm) {
  const auto f = basis_povm(2);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.labels()[1], "e1");
  EXPECT_EQ(f.elements()[1](1, 1), cplx(1.0, 0.0));
}
