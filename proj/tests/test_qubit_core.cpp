#include <gtest/gtest.h>

#include <cmath>

#include "qig/error.hpp"
#include "qig/qubit_core.hpp"

using namespace qig;

namespace {

double trace_component(const Mat2& m, int k) { return (m * pauli(k)).trace().real(); }

}  // namespace

TEST(QubitDensity, MaximallyMixed) {
  const QubitDensity rho = QubitDensity::from_bloch({0, 0, 0});
  EXPECT_LT(max_abs(rho.matrix() - 0.5 * Mat2::Identity()), 1e-15);
  EXPECT_EQ(rho.w(), 0.0);
}

TEST(QubitDensity, NorthPole) {
  const QubitDensity rho = QubitDensity::from_bloch({0, 0, 1});
  Mat2 expected = Mat2::Zero();
  expected(0, 0) = 1.0;
  EXPECT_LT(max_abs(rho.matrix() - expected), 1e-15);
  EXPECT_DOUBLE_EQ(rho.w(), 1.0);
  EXPECT_NEAR(rho.polar().theta, 0.0, 1e-15);
}

TEST(QubitDensity, XAxisEigenvaluesAgainstEigen) {
  const QubitDensity rho = QubitDensity::from_bloch({0.6, 0, 0});
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho.matrix());
  EXPECT_NEAR(es.eigenvalues()(1), 0.8, 1e-15);
  EXPECT_NEAR(es.eigenvalues()(0), 0.2, 1e-15);
  const auto ev = rho.eigenvalues();
  EXPECT_NEAR(ev[0], 0.8, 1e-15);
  EXPECT_NEAR(ev[1], 0.2, 1e-15);
  EXPECT_NEAR(rho.polar().theta, kPi / 2, 1e-15);
  EXPECT_NEAR(rho.polar().phi, 0.0, 1e-15);
}

TEST(QubitDensity, RejectsOutsideBall) {
  try {
    QubitDensity::from_bloch({0.8, 0.7, 0});
    FAIL() << "expected InvalidState";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidState);
  }
  EXPECT_NO_THROW(QubitDensity::from_bloch({0, 0, 1.0 + 5e-13}));
}

TEST(QubitDensity, NegativeWIsAntipodal) {
  const QubitDensity a = QubitDensity::from_polar(-0.4, 0.3, 0.2);
  const QubitDensity b = QubitDensity::from_polar(0.4, kPi - 0.3, 0.2 + kPi);
  EXPECT_LT(max_abs(a.matrix() - b.matrix()), 1e-15);
  EXPECT_NEAR(a.w(), 0.4, 1e-15);
}

TEST(QubitDensity, BlochRoundTripProperty) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = sample_engine(11, i);
    const BlochVector y = random_bloch(rng);
    const QubitDensity rho = QubitDensity::from_bloch(y);
    for (int k = 1; k <= 3; ++k) {
      EXPECT_NEAR(trace_component(rho.matrix(), k), y[k - 1], 1e-13);
    }
  }
}

TEST(Spectrum, DegenerateGivesIdentity) {
  const Spectrum s = spectral_decompose(QubitDensity::from_bloch({0, 0, 0}));
  EXPECT_DOUBLE_EQ(s.p[0], 0.5);
  EXPECT_DOUBLE_EQ(s.p[1], 0.5);
  EXPECT_LT(max_abs(s.u.u() - Mat2::Identity()), 1e-15);
}

TEST(Spectrum, DiagonalStateIsAlreadyDiagonal) {
  const Spectrum s = spectral_decompose(QubitDensity::from_bloch({0, 0, 0.6}));
  EXPECT_NEAR(s.p[0], 0.8, 1e-15);
  EXPECT_NEAR(s.p[1], 0.2, 1e-15);
  EXPECT_LT(max_abs(s.u.u() - Mat2::Identity()), 1e-15);
}

TEST(Spectrum, EigenvaluesFromBlochLength) {
  const Spectrum s = spectral_decompose(QubitDensity::from_bloch({0.3, 0.4, 0}));
  EXPECT_NEAR(s.p[0], 0.75, 1e-15);
  EXPECT_NEAR(s.p[1], 0.25, 1e-15);
}

TEST(Spectrum, RoundTripProperty) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = sample_engine(5, i);
    const QubitDensity rho = QubitDensity::from_bloch(random_bloch(rng));
    const Spectrum s = spectral_decompose(rho);
    Mat2 d = Mat2::Zero();
    d(0, 0) = s.p[0];
    d(1, 1) = s.p[1];
    worst = std::max(worst, max_abs(s.u.u() * d * s.u.u().adjoint() - rho.matrix()));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(RotatedPauli, EigenbasisDiagonalizesSigmaW) {
  for (double theta : {0.0, 0.4, 1.3, 2.9}) {
    for (double phi : {0.0, 1.0, -2.5}) {
      const RotatedPauli r = rotated_pauli_basis(theta, phi);
      const Mat2 v = sigma_w_eigenbasis(theta, phi);
      const Mat2 sw = v.adjoint() * r.sigma_w * v;
      const Mat2 st = v.adjoint() * r.sigma_theta * v;
      const Mat2 sp = v.adjoint() * r.sigma_phi * v;
      // In the sigma_w eigenbasis the three rotated Paulis are sigma_3 and two
      // traceless off-diagonal matrices, each squaring to the identity.
      EXPECT_LT(max_abs(sw - pauli(3)), 1e-13);
      EXPECT_LT(std::abs(st(0, 0)) + std::abs(st(1, 1)), 1e-13);
      EXPECT_LT(std::abs(sp(0, 0)) + std::abs(sp(1, 1)), 1e-13);
      EXPECT_LT(max_abs(st * st - Mat2::Identity()), 1e-13);
      EXPECT_LT(max_abs(st * sp + sp * st), 1e-13);
      EXPECT_LT(max_abs(st * sp - cplx(0, 1) * sw), 1e-13);
    }
  }
}

TEST(Channel, Completeness) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 123456789ULL}) {
    const Channel c = random_channel(seed);
    Mat2 sum = Mat2::Zero();
    for (const auto& k : c.kraus()) sum += k.adjoint() * k;
    EXPECT_LT(max_abs(sum - Mat2::Identity()), 1e-12);
  }
}

TEST(Channel, SeedOneMapsMixedStateToState) {
  const Mat2 out = random_channel(1).apply(Mat2(0.5 * Mat2::Identity()));
  EXPECT_NO_THROW(QubitDensity::from_matrix(out));
}

TEST(Channel, SameSeedBitIdentical) {
  const Channel a = random_channel(42), b = random_channel(42);
  ASSERT_EQ(a.kraus().size(), b.kraus().size());
  for (std::size_t i = 0; i < a.kraus().size(); ++i) EXPECT_TRUE(a.kraus()[i] == b.kraus()[i]);
}

TEST(Channel, PreservesTraceAndPositivity) {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = sample_engine(3, i);
    const QubitDensity rho = QubitDensity::from_bloch(random_bloch(rng));
    const Channel c = random_channel(rng);
    const Mat2 out = c.apply(rho.matrix());
    ASSERT_NEAR(out.trace().real(), 1.0, 1e-13);
    ASSERT_GT(min_eigenvalue(out), -1e-13);
  }
}

TEST(Channel, RejectsIncompleteKraus) {
  EXPECT_THROW(Channel({Mat2(0.5 * Mat2::Identity())}), Error);
}

TEST(TangentVector, RequiresTraceless) {
  EXPECT_THROW(TangentVector(Mat2::Identity()), Error);
  EXPECT_NO_THROW(TangentVector(pauli(2)));
}
