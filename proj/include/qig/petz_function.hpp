#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qig {

using cplx = std::complex<double>;

enum class PetzKind { VonNeumann, Tsallis, Power, ExpScheme, SquareControl, Tabulated };

/// A positive function on (0, inf) used to build quantum metrics of Petz
/// form, optionally with a holomorphic extension to the upper half-plane.
class PetzFunction {
 public:
  using RealFn = std::function<double(double)>;
  /// Returns nullopt on the declared singular set.
  using ComplexFn = std::function<std::optional<cplx>(cplx)>;

  PetzFunction(PetzKind kind, std::string id, std::vector<double> params, RealFn real,
               ComplexFn complex = {});

  double operator()(double t) const { return scale_ * real_(t); }

  /// nullopt when there is no complex extension or z is singular.
  std::optional<cplx> complex_value(cplx z) const;
  bool has_complex_extension() const { return static_cast<bool>(complex_); }

  /// Positive multiple of this function. Scaling leaves monotonicity verdicts unchanged.
  PetzFunction scaled(double factor) const;

  PetzKind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  const std::vector<double>& params() const { return params_; }
  double scale() const { return scale_; }

  /// id[:param[,param]] form, e.g. "tsallis:0.5".
  std::string spec() const;

 private:
  PetzKind kind_;
  std::string id_;
  std::vector<double> params_;
  RealFn real_;
  ComplexFn complex_;
  double scale_ = 1.0;
};

/// (t - 1) / ln t
PetzFunction von_neumann_function();

/// q(1-q)(t-1)^2 / ((t^q - 1)(t^(1-q) - 1)), q in (0, 1)
PetzFunction tsallis_function(double q);

/// t^(2a), a in [0, 1/2]
PetzFunction power_function(double a);

enum class ExpNormalization { Canonical, Quarter };

/// Petz function induced by the exponential tomographic scheme,
/// h(t) = beta w (1 - w) / sinh(beta w) with w = (1 - t)/(1 + t), so h(1) = 1.
/// Quarter divides by 4.
PetzFunction exp_scheme_function(double beta, ExpNormalization norm = ExpNormalization::Canonical);

/// t^2, a known non-operator-monotone control.
PetzFunction square_control_function();

/// Interpolated table of (t, f) samples (barycentric rational in log t).
/// Throws DomainError outside the tabulated range.
PetzFunction tabulated_function(std::vector<double> t, std::vector<double> values);

/// Catalog lookup by id: von-neumann|vn, tsallis, power, exp-scheme,
/// exp-scheme-quarter, square-control.
PetzFunction catalog(std::string_view id, const std::vector<double>& params);

struct SpecParts {
  std::string id;
  std::vector<double> params;
};

/// Splits "id[:p1[,p2...]]"; throws DomainError on a malformed number.
SpecParts split_spec(std::string_view spec);

/// Parses "id[:param[,param]]".
PetzFunction parse_function_spec(std::string_view spec);

/// f(t) - t f(1/t)
double symmetry_residual(const PetzFunction& f, double t);

}  // namespace qig
