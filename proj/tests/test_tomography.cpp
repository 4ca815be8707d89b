#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qig/error.hpp"
#include "qig/tomography.hpp"

using namespace qig;

namespace {

// Builds e^{-beta rho}/Tr from the matrix exponential and reads w~ along the
// state direction.
double exponential_oracle(double beta, double w) {
  Mat2 rho = Mat2::Zero();
  rho(0, 0) = 0.5 * (1 + w);
  rho(1, 1) = 0.5 * (1 - w);
  const Mat2 e = (-beta * rho).exp();
  const Mat2 f = e / e.trace();
  return (f(0, 0) - f(1, 1)).real();
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no qig::Error thrown";
  return ErrorKind::DomainError;
}

}  // namespace

TEST(Tomogram, MixedStateIsFair) {
  const QubitDensity rho = QubitDensity::from_bloch({0, 0, 0});
  const Quorum q = rotated_quorum(0.7, 1.9);
  for (const auto& f : q.frames()) {
    const ProbabilityPair p = tomogram(rho, f);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
  }
}

TEST(Tomogram, IdentityFrameMatchesSandwich) {
  const QubitDensity rho = QubitDensity::from_bloch({0, 0, 0.6});
  const ProbabilityPair p = tomogram(rho, UnitaryFrame(Mat2::Identity(), "u3"));
  EXPECT_NEAR(p[0], 0.8, 1e-15);
  EXPECT_NEAR(p[1], 0.2, 1e-15);
}

TEST(Tomogram, StandardQuorumGivesHalfOnePlusY) {
  const BlochVector y{0.3, -0.5, 0.2};
  const Tomogram t = tomograms(QubitDensity::from_bloch(y), standard_quorum());
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(t.probs[static_cast<std::size_t>(j)][0], 0.5 * (1 + y[j]), 1e-15);
  }
}

TEST(Quorum, StandardFramesUnitary) {
  const Quorum q = standard_quorum();
  for (const auto& f : q.frames()) {
    EXPECT_LT(max_abs(f.u() * f.u().adjoint() - Mat2::Identity()), 1e-14);
  }
}

TEST(Quorum, RotatedQuorumOnAlignedState) {
  for (double theta : {0.2, 1.0, 2.5}) {
    for (double phi : {0.0, 0.8, -1.7}) {
      const double w = 0.7;
      const Tomogram t = tomograms(QubitDensity::from_polar(w, theta, phi), rotated_quorum(theta, phi));
      EXPECT_NEAR(t.probs[0][0], 0.5, 1e-14);
      EXPECT_NEAR(t.probs[1][0], 0.5, 1e-14);
      EXPECT_NEAR(t.probs[2][0], 0.5 * (1 + w), 1e-14);
      EXPECT_NEAR(t.probs[2][1], 0.5 * (1 - w), 1e-14);
    }
  }
}

TEST(Quorum, RotatedAtOriginMatchesStandardUpToPhase) {
  const Quorum a = rotated_quorum(0.0, 0.0), b = standard_quorum();
  for (int j = 0; j < 3; ++j) {
    const Mat2& ua = a.frames()[static_cast<std::size_t>(j)].u();
    const Mat2& ub = b.frames()[static_cast<std::size_t>(j)].u();
    const cplx phase = (ub.adjoint() * ua).trace() / 2.0;
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-14);
    EXPECT_LT(max_abs(ua - phase * ub), 1e-14);
  }
}

TEST(Reconstruct, Examples) {
  const Quorum q = standard_quorum();
  auto with = [&](double a, double b, double c) {
    return Tomogram{q.frames(), {{a, 1 - a}, {b, 1 - b}, {c, 1 - c}}};
  };
  BlochVector y = reconstruct_bloch(with(0.5, 0.5, 0.5));
  EXPECT_NEAR(y.norm(), 0.0, 1e-15);
  y = reconstruct_bloch(with(0.8, 0.5, 0.5));
  EXPECT_NEAR(y[0], 0.6, 1e-15);
  EXPECT_NEAR(y[1], 0.0, 1e-15);
  EXPECT_NEAR(y[2], 0.0, 1e-15);
  y = reconstruct_bloch(with(1.0, 0.5, 0.5));
  EXPECT_NEAR(y[0], 1.0, 1e-15);
  EXPECT_EQ(kind_of([&] { reconstruct_bloch(with(1.0, 1.0, 0.5)); }), ErrorKind::InconsistentTomogram);
}

TEST(Reconstruct, RoundTripProperty) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = sample_engine(8, i);
    const BlochVector y = random_bloch(rng);
    const QubitDensity rho = QubitDensity::from_bloch(y);
    const Quorum q = rotated_quorum(rho.polar().theta + 0.3, rho.polar().phi - 0.2);
    const BlochVector r = reconstruct_bloch(tomograms(rho, q));
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(r[j] - y[j]));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BlochFromTensor, Examples) {
  EXPECT_DOUBLE_EQ(bloch_from_tensor(1.0, 1), 0.0);
  EXPECT_NEAR(bloch_from_tensor(1.5625, 1), 0.6, 1e-15);
  EXPECT_NEAR(bloch_from_tensor(4.0 / 3.0, -1), -0.5, 1e-15);
  EXPECT_EQ(kind_of([] { bloch_from_tensor(0.9, 1); }), ErrorKind::InvalidTensor);
}

TEST(ExponentialScheme, FixedPointAndOracle) {
  for (double beta : {0.5, 2.0, 7.0}) EXPECT_EQ(exponential_scheme(beta)(0.0), 0.0);
  EXPECT_NEAR(exponential_scheme(2.0)(0.5), -0.4621171573, 1e-10);
  EXPECT_NEAR(exponential_scheme(2.0)(0.5), exponential_oracle(2.0, 0.5), 1e-15);
  for (int i = 0; i < 20; ++i) {
    const double beta = 0.5 + 3.5 * i / 19.0;
    for (int k = 0; k < 19; ++k) {
      const double w = -0.9 + 1.8 * k / 18.0;
      EXPECT_NEAR(exponential_scheme(beta)(w), exponential_oracle(beta, w), 1e-12);
    }
  }
  EXPECT_EQ(kind_of([] { exponential_scheme(0.0); }), ErrorKind::DegenerateScheme);
}

TEST(ExponentialScheme, DerivativeMatchesFiniteDifference) {
  const SpectralMap m = exponential_scheme(1.7);
  const double h = 1e-5;
  for (double w = -0.95; w <= 0.95; w += 0.05) {
    const double fd = (m(w + h) - m(w - h)) / (2 * h);
    EXPECT_NEAR(m.derivative(w), fd, 1e-8);
  }
}

TEST(SchemeFromMatrixFunction, IdentityAndExponentialAndFlip) {
  const SpectralMap id = scheme_from_matrix_function([](const Mat2& r) { return r; }, "id");
  const SpectralMap ex = scheme_from_matrix_function(
      [](const Mat2& r) {
        const Mat2 e = (-2.0 * r).exp();
        return Mat2(e / e.trace());
      },
      "exp");
  const SpectralMap flip =
      scheme_from_matrix_function([](const Mat2& r) { return Mat2(Mat2::Identity() - r); }, "flip");
  const SpectralMap closed = exponential_scheme(2.0);
  for (double w = -0.9; w <= 0.9; w += 0.1) {
    EXPECT_NEAR(id(w), w, 1e-15);
    EXPECT_NEAR(ex(w), closed(w), 1e-12);
    EXPECT_NEAR(flip(w), -w, 1e-15);
    EXPECT_NEAR(ex.derivative(w), closed.derivative(w), 1e-8);
  }
}

TEST(SchemeFromMatrixFunction, RejectsNonStatesAndNonMonotone) {
  EXPECT_EQ(kind_of([] {
              scheme_from_matrix_function([](const Mat2& r) { return Mat2(2.0 * r); });
            }),
            ErrorKind::InvalidScheme);
  EXPECT_EQ(kind_of([] {
              scheme_from_matrix_function([](const Mat2& r) {
                // w -> w^2 folds the interval.
                const double w = (r(0, 0) - r(1, 1)).real();
                Mat2 out = Mat2::Zero();
                out(0, 0) = 0.5 * (1 + w * w);
                out(1, 1) = 0.5 * (1 - w * w);
                return out;
              });
            }),
            ErrorKind::NonInvertibleScheme);
}

TEST(SchemeTomograms, UwFrameCarriesMappedLength) {
  const double theta = 1.2, phi = 0.4, w = 0.55;
  const SpectralMap m = exponential_scheme(3.0);
  const QubitDensity rho = QubitDensity::from_polar(w, theta, phi);
  const Tomogram t = tomograms(m.apply(rho), rotated_quorum(theta, phi));
  EXPECT_NEAR(t.probs[0][0], 0.5, 1e-14);
  EXPECT_NEAR(t.probs[1][0], 0.5, 1e-14);
  EXPECT_NEAR(2 * t.probs[2][0] - 1, m(w), 1e-13);
}
