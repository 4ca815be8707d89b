#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qig/error.hpp"
#include "qig/petz_function.hpp"
#include "qig/tomography.hpp"

namespace qig {

enum class SolutionSource { Numeric, SeparableQuadrature, ClosedForm };

std::string to_string(SolutionSource s);

struct OdePoint {
  double w = 0.0;
  double wt = 0.0;        // w~(w)
  double dwt = 0.0;       // dw~/dw
  double residual = 0.0;  // |dwt^2 - RHS(w, wt)|
};

/// A scheme map w -> w~ sampled on an ordered grid (increasing w).
struct OdeSolution {
  std::vector<OdePoint> grid;
  int branch = 1;
  double residual_max = 0.0;
  SolutionSource source = SolutionSource::Numeric;

  /// Piecewise cubic Hermite interpolant through (w, w~, dw~/dw). Exact at
  /// the grid points; throws DomainError outside the grid.
  SpectralMap as_map() const;
};

/// Carries the partial grid of a failed solve.
class SolveError : public Error {
 public:
  SolveError(ErrorKind kind, const std::string& what, OdeSolution partial)
      : Error(kind, what), partial_(std::move(partial)) {}
  const OdeSolution& partial() const { return partial_; }

 private:
  OdeSolution partial_;
};

/// (w~/w)^2 (1 - w~)/(1 - w) h(t(w)) / f(t(w~)) with t(x) = (1 - x)/(1 + x).
double ode_rhs(const PetzFunction& f, const PetzFunction& h, double w, double wt);

struct OdeOptions {
  double w_min = 0.0;  // 0 for both means [0.01, 0.99] on the side of w0
  double w_max = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  // Step cap as a fraction of the range; keeps the dense-output defect, which
  // is one order lower than the step error, well under the residual bound.
  double max_step_fraction = 1.0 / 400;
  double defect_tol = 1e-10;  // relative bound on the dense-output derivative error
  int output_points = 181;  // uniform output grid, w0 is always included
};

/// Integrates dw~/dw = branch * sqrt(RHS) from (w0, w~0) across the range.
/// Output derivatives come from the dense interpolant, so the stored
/// residual measures the defect of the continuous solution.
OdeSolution solve_ode(const PetzFunction& f, const PetzFunction& h, double w0, double wt0,
                      int branch, const OdeOptions& opts = {});

struct SeparableOptions {
  double w_min = 0.0;  // 0 for both means [0.01, 0.99]
  double w_max = 0.0;
  int output_points = 181;
};

/// Power-family pair f = t^{2a}, h = t^{2b}: matches the two antiderivatives
/// Phi_a(w~) - Phi_a(w~0) = s (Psi_b(w) - Psi_b(w0)) by tanh-sinh quadrature
/// and inverts the w~ side by bracketing. The branch is sign(w0 w~0).
OdeSolution solve_separable_power(double a, double b, double w0, double wt0,
                                  const SeparableOptions& opts = {});

/// Samples a known scheme map on a uniform grid and records its ODE residual.
OdeSolution closed_form_solution(const SpectralMap& map, const PetzFunction& f,
                                 const PetzFunction& h, double w_min, double w_max,
                                 int points = 181);

struct VerificationRecord {
  std::string f;
  std::string h;
  std::string source;
  std::size_t points = 0;
  double ode_residual_max = 0.0;
  double factorization_residual_max = 0.0;  // max over both coefficients
  double bound = 1e-8;
  bool passed = false;
};

/// Re-evaluates the ODE residual at every grid point and checks that the
/// pullback of the f-metric equals A times the h-metric coefficient-wise.
VerificationRecord verify_solution(const OdeSolution& sol, const PetzFunction& f,
                                   const PetzFunction& h, double bound = 1e-8);

/// w~0 on the exponential-scheme solution, -tanh(beta w0 / 2).
double exponential_seed(double beta, double w0);

}  // namespace qig
