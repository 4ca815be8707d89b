#include <gtest/gtest.h>

#include <cmath>

#include "qig/error.hpp"
#include "qig/scheme_solver.hpp"

using namespace qig;

namespace {

OdeOptions range(double lo, double hi) {
  OdeOptions o;
  o.w_min = lo;
  o.w_max = hi;
  return o;
}

SeparableOptions separable_range(double lo, double hi) {
  SeparableOptions o;
  o.w_min = lo;
  o.w_max = hi;
  return o;
}

}  // namespace

TEST(OdeRhs, Identities) {
  const PetzFunction t = power_function(0.5), one = power_function(0.0);
  for (double w : {0.1, 0.5, 0.9, -0.3}) {
    EXPECT_NEAR(ode_rhs(t, one, w, -w), 1.0, 1e-14);
    EXPECT_NEAR(ode_rhs(von_neumann_function(), von_neumann_function(), w, w), 1.0, 1e-14);
  }
  for (double w = 0.05; w <= 0.951; w += 0.05) {
    const double th = std::tanh(w);
    const double d = 1 - th * th;
    EXPECT_NEAR(ode_rhs(von_neumann_function(), exp_scheme_function(2.0), w, -th), d * d, 1e-10);
  }
}

TEST(OdeRhs, Errors) {
  try {
    ode_rhs(von_neumann_function(), von_neumann_function(), 0.0, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RemovableSingularity);
  }
  try {
    const PetzFunction negative(PetzKind::Tabulated, "negative", {}, [](double) { return -1.0; });
    ode_rhs(negative, von_neumann_function(), 0.3, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidPetzFunction);
  }
}

TEST(SolveOde, ClosedCase) {
  const OdeSolution s = solve_ode(power_function(0.5), power_function(0.0), 0.05, -0.05, -1, range(0.05, 0.95));
  EXPECT_EQ(s.source, SolutionSource::Numeric);
  EXPECT_EQ(s.branch, -1);
  EXPECT_LT(s.residual_max, 1e-8);
  for (const auto& p : s.grid) EXPECT_NEAR(p.wt, -p.w, 1e-8);
}

TEST(SolveOde, IdentitySolution) {
  const OdeSolution s = solve_ode(von_neumann_function(), von_neumann_function(), 0.1, 0.1, 1);
  EXPECT_DOUBLE_EQ(s.grid.front().w, 0.01);
  EXPECT_DOUBLE_EQ(s.grid.back().w, 0.99);
  for (const auto& p : s.grid) EXPECT_NEAR(p.wt, p.w, 1e-9);
}

TEST(SolveOde, ExponentialSchemeOracle) {
  const OdeSolution s = solve_ode(von_neumann_function(), exp_scheme_function(2.0), 0.1,
                                  exponential_seed(2.0, 0.1), -1, range(0.1, 0.9));
  for (const auto& p : s.grid) {
    EXPECT_NEAR(p.wt, -std::tanh(p.w), 1e-7);
    const double c = std::cosh(p.w);
    EXPECT_NEAR(p.dwt, -1 / (c * c), 1e-7);
  }
}

TEST(SolveOde, NegativeSide) {
  const OdeSolution s = solve_ode(von_neumann_function(), exp_scheme_function(2.0), -0.1,
                                  exponential_seed(2.0, -0.1), -1);
  EXPECT_DOUBLE_EQ(s.grid.front().w, -0.99);
  EXPECT_DOUBLE_EQ(s.grid.back().w, -0.01);
  for (const auto& p : s.grid) EXPECT_NEAR(p.wt, -std::tanh(p.w), 1e-7);
}

TEST(SolveOde, InvariantsHold) {
  const OdeSolution s = solve_ode(tsallis_function(0.3), von_neumann_function(), 0.3, 0.25, 1);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const auto& p = s.grid[i];
    EXPECT_LT(std::abs(p.w), 1.0);
    EXPECT_LT(std::abs(p.wt), 1.0);
    EXPECT_NEAR(p.residual, std::abs(p.dwt * p.dwt - ode_rhs(tsallis_function(0.3), von_neumann_function(), p.w, p.wt)),
                1e-15);
    if (i > 0) EXPECT_GT(p.wt, s.grid[i - 1].wt);
  }
  EXPECT_LT(s.residual_max, 1e-8);
}

TEST(SolveOde, ToleranceAgreement) {
  OdeOptions loose = range(0.05, 0.95), tight = range(0.05, 0.95);
  loose.rtol = 1e-8;
  loose.atol = 1e-10;
  const auto f = tsallis_function(0.7), h = exp_scheme_function(1.0);
  const OdeSolution a = solve_ode(f, h, 0.2, -0.15, -1, loose);
  const OdeSolution b = solve_ode(f, h, 0.2, -0.15, -1, tight);
  ASSERT_EQ(a.grid.size(), b.grid.size());
  for (std::size_t i = 0; i < a.grid.size(); ++i) EXPECT_NEAR(a.grid[i].wt, b.grid[i].wt, 1e-7);
}

TEST(SolveOde, RangeEscapeKeepsPartialGrid) {
  try {
    solve_ode(power_function(0.3), power_function(0.1), 0.2, -0.2, -1);
    FAIL() << "expected RangeEscape";
  } catch (const SolveError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RangeEscape);
    EXPECT_GT(e.partial().grid.size(), 10u);
    for (const auto& p : e.partial().grid) EXPECT_LT(std::abs(p.wt), 1.0);
  }
}

TEST(SolveOde, RejectsBadSeeds) {
  const auto f = von_neumann_function();
  EXPECT_THROW(solve_ode(f, f, 0.0, 0.1, 1), Error);
  EXPECT_THROW(solve_ode(f, f, 0.1, 0.0, 1), Error);
  EXPECT_THROW(solve_ode(f, f, 0.1, 0.1, 2), Error);
  EXPECT_THROW(solve_ode(f, f, 0.1, 0.1, 1, range(-0.5, 0.5)), Error);
}

TEST(Separable, ClosedCase) {
  const OdeSolution s = solve_separable_power(0.5, 0.0, 0.05, -0.05, separable_range(0.05, 0.95));
  EXPECT_EQ(s.source, SolutionSource::SeparableQuadrature);
  EXPECT_EQ(s.branch, -1);
  for (const auto& p : s.grid) EXPECT_NEAR(p.wt, -p.w, 1e-10);
}

TEST(Separable, EqualExponentsGiveIdentity) {
  for (double a : {0.0, 0.2, 0.5}) {
    const OdeSolution s = solve_separable_power(a, a, 0.3, 0.3, separable_range(0.05, 0.95));
    for (const auto& p : s.grid) EXPECT_NEAR(p.wt, p.w, 1e-10);
  }
}

TEST(Separable, AgreesWithNumeric) {
  const OdeSolution q = solve_separable_power(0.3, 0.1, 0.2, -0.2, separable_range(0.2, 0.85));
  const OdeSolution n = solve_ode(power_function(0.3), power_function(0.1), 0.2, -0.2, -1, range(0.2, 0.85));
  ASSERT_EQ(q.grid.size(), n.grid.size());
  for (std::size_t i = 0; i < q.grid.size(); ++i) {
    EXPECT_DOUBLE_EQ(q.grid[i].w, n.grid[i].w);
    EXPECT_NEAR(q.grid[i].wt, n.grid[i].wt, 1e-7);
  }
}

TEST(Separable, ReflectionSymmetry) {
  // a -> 1/2 - a with w~ -> -w~ maps solutions of the power family to each other.
  const double a = 0.15, b = 0.1;
  const OdeSolution s = solve_separable_power(a, b, 0.3, 0.4, separable_range(0.1, 0.7));
  const OdeSolution r = solve_separable_power(0.5 - a, b, 0.3, -0.4, separable_range(0.1, 0.7));
  EXPECT_EQ(s.branch, -r.branch);
  for (std::size_t i = 0; i < s.grid.size(); ++i) EXPECT_NEAR(s.grid[i].wt, -r.grid[i].wt, 1e-10);
}

TEST(Separable, RangeEscape) {
  try {
    solve_separable_power(0.3, 0.1, 0.2, -0.2);
    FAIL();
  } catch (const SolveError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RangeEscape);
  }
}

TEST(Verify, ClosedFormSolutions) {
  const SpectralMap flip("flip", {}, [](double w) { return -w; }, [](double) { return -1.0; });
  const OdeSolution s = closed_form_solution(flip, power_function(0.5), power_function(0.0), 0.05, 0.95);
  const VerificationRecord r = verify_solution(s, power_function(0.5), power_function(0.0));
  EXPECT_LT(r.ode_residual_max, 1e-10);
  EXPECT_LT(r.factorization_residual_max, 1e-10);
  EXPECT_TRUE(r.passed);

  const OdeSolution id = closed_form_solution(identity_scheme(), tsallis_function(0.4), tsallis_function(0.4), 0.05, 0.95);
  const VerificationRecord ri = verify_solution(id, tsallis_function(0.4), tsallis_function(0.4));
  EXPECT_LT(ri.ode_residual_max, 1e-12);
  EXPECT_LT(ri.factorization_residual_max, 1e-12);
}

TEST(Verify, NumericSolutionsFactorize) {
  const OdeSolution s = solve_ode(von_neumann_function(), exp_scheme_function(2.0), 0.1,
                                  exponential_seed(2.0, 0.1), -1, range(0.1, 0.9));
  const VerificationRecord r = verify_solution(s, von_neumann_function(), exp_scheme_function(2.0));
  EXPECT_LT(r.factorization_residual_max, 1e-8);
  EXPECT_TRUE(r.passed);
}

TEST(Verify, ReportsViolatedBound) {
  // The exponential scheme does not connect f_vN to itself.
  const OdeSolution s = closed_form_solution(exponential_scheme(2.0), von_neumann_function(),
                                             von_neumann_function(), 0.1, 0.9);
  const VerificationRecord r = verify_solution(s, von_neumann_function(), von_neumann_function());
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.ode_residual_max, 1e-3);
}

TEST(Solution, AsMapInterpolates) {
  const OdeSolution s = solve_ode(von_neumann_function(), exp_scheme_function(2.0), 0.1,
                                  exponential_seed(2.0, 0.1), -1, range(0.1, 0.9));
  const SpectralMap m = s.as_map();
  for (double w : {0.1, 0.333, 0.5, 0.8777, 0.9}) EXPECT_NEAR(m(w), -std::tanh(w), 1e-8);
  EXPECT_THROW(m(0.95), Error);
}
