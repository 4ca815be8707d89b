#include <gtest/gtest.h>

#include <cmath>

#include "qig/monotonicity.hpp"

using namespace qig;

TEST(Loewner, PinnedExpSchemeWitness) {
  // Located by a fine scan near z = -1 and pinned here.
  const auto v = exp_scheme_function(2.0).complex_value(cplx(-0.9, 0.2));
  ASSERT_TRUE(v.has_value());
  EXPECT_NEAR(v->real(), -0.4365, 1e-3);
  EXPECT_NEAR(v->imag(), -0.5454, 1e-3);
}

TEST(Loewner, ExpSchemeBoxHasWitness) {
  const MonotonicityReport r = loewner_scan(exp_scheme_function(2.0), Region{-1.2, -0.8, 0.0, 0.2},
                                            GridResolution{81, 40});
  EXPECT_EQ(r.verdict, Verdict::Violation);
  ASSERT_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) EXPECT_LT(std::get<LoewnerWitness>(w).value.imag(), -1e-10);
  EXPECT_TRUE(reverify(r, exp_scheme_function(2.0)));
}

TEST(Loewner, MonotoneControlsPass) {
  std::vector<PetzFunction> fs = {von_neumann_function(), power_function(0.0), power_function(0.25),
                                  power_function(0.5)};
  for (int k = 1; k <= 9; ++k) fs.push_back(tsallis_function(0.1 * k));
  for (const auto& f : fs) {
    const MonotonicityReport r = loewner_scan(f, Region{});
    EXPECT_EQ(r.verdict, Verdict::Pass) << f.spec();
    EXPECT_EQ(r.violations, 0u) << f.spec();
    EXPECT_EQ(r.samples, 400u * 200u);
  }
}

TEST(Loewner, ScalingInvariance) {
  const Region box{-1.2, -0.8, 0.0, 0.2};
  const MonotonicityReport a = loewner_scan(exp_scheme_function(2.0), box, GridResolution{41, 20}, 0.0);
  const MonotonicityReport b = loewner_scan(exp_scheme_function(2.0, ExpNormalization::Quarter), box,
                                            GridResolution{41, 20}, 0.0);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.violations, b.violations);
}

TEST(Matrix, IdentityFunctionPasses) {
  SearchOptions o;
  o.samples = 500;
  const MonotonicityReport r = matrix_monotonicity_test(power_function(0.5), o);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Matrix, ClassicSquareWitness) {
  Eigen::MatrixXcd a(2, 2), b(2, 2);
  a << 1, 1, 1, 1;
  b << 2, 1, 1, 1;
  const MatrixPairCheck c = check_matrix_pair(square_control_function(), a, b);
  EXPECT_NEAR(c.gap_min_eigenvalue, 0.0, 1e-15);
  // B^2 - A^2 = [[3,1],[1,0]], eigenvalues (3 -+ sqrt 13)/2.
  EXPECT_NEAR(c.image_min_eigenvalue, (3 - std::sqrt(13.0)) / 2, 1e-14);
}

TEST(Matrix, SquareControlViolationsReverify) {
  SearchOptions o;
  o.samples = 1000;
  o.seed = 7;
  const MonotonicityReport r = matrix_monotonicity_test(square_control_function(), o);
  EXPECT_EQ(r.verdict, Verdict::Violation);
  EXPECT_TRUE(reverify(r, square_control_function()));
  o.dim = 3;
  EXPECT_EQ(matrix_monotonicity_test(square_control_function(), o).verdict, Verdict::Violation);
}

TEST(Matrix, VonNeumannPassesDim3) {
  SearchOptions o;
  o.samples = 3000;
  o.dim = 3;
  EXPECT_EQ(matrix_monotonicity_test(von_neumann_function(), o).violations, 0u);
}

TEST(Matrix, ScalingInvariance) {
  SearchOptions o;
  o.samples = 2000;
  o.seed = 5;
  const auto a = matrix_monotonicity_test(exp_scheme_function(5.0), o);
  const auto b = matrix_monotonicity_test(exp_scheme_function(5.0, ExpNormalization::Quarter), o);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_NE(a.verdict, Verdict::Pass);
}

TEST(Matrix, ReplayAcrossWorkerCounts) {
  SearchOptions o;
  o.samples = 2000;
  o.seed = 99;
  const auto a = matrix_monotonicity_test(square_control_function(), o);
  o.workers = 3;
  const auto b = matrix_monotonicity_test(square_control_function(), o);
  ASSERT_EQ(a.violations, b.violations);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    const auto& x = std::get<MatrixWitness>(a.witnesses[i]);
    const auto& y = std::get<MatrixWitness>(b.witnesses[i]);
    EXPECT_EQ(x.sample, y.sample);
    EXPECT_TRUE(x.a == y.a);
    EXPECT_TRUE(x.b == y.b);
  }
}

TEST(Cptp, IdentityChannelIsEquality) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = sample_engine(2, i);
    const QubitDensity rho = QubitDensity::from_bloch(random_bloch(rng, 0.9));
    const TangentVector a = random_tangent(rng);
    const MetricGap g = metric_monotonicity_gap(exp_scheme_function(5.0), rho, a, Channel::identity());
    EXPECT_NEAR(g.lhs, g.rhs, 1e-12 * g.rhs);
  }
}

TEST(Cptp, VonNeumannPasses) {
  SearchOptions o;
  o.samples = 3000;
  o.seed = 17;
  o.workers = 2;
  const MonotonicityReport r = metric_monotonicity_test(von_neumann_function(), o);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Cptp, ExpSchemeReportedWithSeed) {
  SearchOptions o;
  o.samples = 3000;
  o.seed = 2024;
  const PetzFunction h = exp_scheme_function(5.0);
  const MonotonicityReport a = metric_monotonicity_test(h, o);
  EXPECT_NE(a.verdict, Verdict::Pass);
  EXPECT_EQ(a.seed, 2024u);
  EXPECT_TRUE(reverify(a, h));
  const MonotonicityReport b = metric_monotonicity_test(h, o);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.violations, b.violations);
}

TEST(Verdict, Names) {
  EXPECT_EQ(to_string(Verdict::Pass), "pass");
  EXPECT_EQ(to_string(Verdict::Violation), "violation");
  EXPECT_EQ(to_string(Verdict::Inconclusive), "inconclusive");
}
