#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace qig {

/// Adaptive Dormand-Prince 5(4) integrator for a scalar ODE y' = f(t, y),
/// with the continuous extension of Hairer & Wanner for dense output.
class DormandPrince {
 public:
  /// Returning nullopt marks (t, y) as outside the domain; the step is
  /// rejected and retried with half the step size.
  using Rhs = std::function<std::optional<double>(double, double)>;

  struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 picks |t1 - t0| * 1e-3
    double min_step = 1e-14;
    double max_step = 0.0;      // 0 means unbounded
    /// When positive, an accepted step is also required to have a dense-output
    /// derivative within defect_tol * (1 + |f|) of f(t, y(t)) at two interior
    /// points; otherwise it is retried with a smaller step.
    double defect_tol = 0.0;
    long max_steps = 1'000'000;
  };

  struct Step {
    double t0, h;
    double r1, r2, r3, r4, r5;  // continuous extension coefficients

    double value(double t) const;
    double derivative(double t) const;
  };

  enum class Status { Done, DomainExit, StepUnderflow, MaxSteps };

  struct Result {
    Status status = Status::Done;
    std::vector<Step> steps;  // accepted steps in integration order
    double t = 0.0;           // last accepted point
    double y = 0.0;
  };

  DormandPrince(Rhs f, Options opts) : f_(std::move(f)), opts_(opts) {}

  /// Integrates from (t0, y0) to t1 (either direction).
  Result integrate(double t0, double y0, double t1) const;

 private:
  Rhs f_;
  Options opts_;
};

}  // namespace qig
