#include "qig/petz_function.hpp"

#include <charconv>
#include <cmath>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "qig/error.hpp"

namespace qig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Taylor series are used for |x| below this; 12 terms leave < 1e-30 error.
constexpr double kSeriesRadius = 1e-3;

cplx log1p_c(cplx u) {
  if (std::abs(u) >= kSeriesRadius) return std::log(1.0 + u);
  cplx term = u, sum = 0.0;
  for (int n = 1; n <= 12; ++n) {
    sum += term / static_cast<double>(n) * (n % 2 == 1 ? 1.0 : -1.0);
    term *= u;
  }
  return sum;
}

cplx expm1_c(cplx x) {
  if (std::abs(x) >= kSeriesRadius) return std::exp(x) - 1.0;
  cplx term = x, sum = 0.0;
  for (int n = 1; n <= 12; ++n) {
    sum += term;
    term *= x / static_cast<double>(n + 1);
  }
  return sum;
}

// x / sinh(x), regular at 0.
double x_over_sinh(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0;
  }
  return x / std::sinh(x);
}

cplx x_over_sinh(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0;
  }
  return x / std::sinh(x);
}

std::string format_param(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

PetzFunction::PetzFunction(PetzKind kind, std::string id, std::vector<double> params, RealFn real,
                           ComplexFn complex)
    : kind_(kind),
      id_(std::move(id)),
      params_(std::move(params)),
      real_(std::move(real)),
      complex_(std::move(complex)) {}

std::optional<cplx> PetzFunction::complex_value(cplx z) const {
  if (!complex_) return std::nullopt;
  auto v = complex_(z);
  if (v) *v *= scale_;
  return v;
}

PetzFunction PetzFunction::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorKind::DomainError, "scale factor must be positive");
  }
  PetzFunction out = *this;
  out.scale_ *= factor;
  return out;
}

std::string PetzFunction::spec() const {
  std::string s = id_;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    s += (i == 0 ? ":" : ",") + format_param(params_[i]);
  }
  return s;
}

PetzFunction von_neumann_function() {
  auto real = [](double t) {
    const double u = t - 1.0;
    if (u == 0.0) return 1.0;
    return u / std::log1p(u);
  };
  auto complex = [](cplx z) -> std::optional<cplx> {
    const cplx u = z - 1.0;
    if (u == 0.0) return cplx(1.0);
    if (z == 0.0) return std::nullopt;
    return u / log1p_c(u);
  };
  return PetzFunction(PetzKind::VonNeumann, "von-neumann", {}, real, complex);
}

PetzFunction tsallis_function(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::DomainError, "Tsallis parameter q must lie in (0, 1)");
  }
  const double p = 1.0 - q;
  auto real = [q, p](double t) {
    const double u = t - 1.0;
    if (u == 0.0) return 1.0;
    const double l = std::log1p(u);
    return q * p * u * u / (std::expm1(q * l) * std::expm1(p * l));
  };
  auto complex = [q, p](cplx z) -> std::optional<cplx> {
    const cplx u = z - 1.0;
    if (u == 0.0) return cplx(1.0);
    if (z == 0.0) return std::nullopt;
    const cplx l = log1p_c(u);
    return q * p * u * u / (expm1_c(q * l) * expm1_c(p * l));
  };
  return PetzFunction(PetzKind::Tsallis, "tsallis", {q}, real, complex);
}

PetzFunction power_function(double a) {
  if (!(a >= 0.0 && a <= 0.5)) {
    throw Error(ErrorKind::DomainError, "power exponent parameter a must lie in [0, 1/2]");
  }
  auto real = [a](double t) { return std::pow(t, 2.0 * a); };
  auto complex = [a](cplx z) -> std::optional<cplx> {
    if (a == 0.0) return cplx(1.0);
    if (z == 0.0) return std::nullopt;
    return std::pow(z, 2.0 * a);
  };
  return PetzFunction(PetzKind::Power, "power", {a}, real, complex);
}

PetzFunction exp_scheme_function(double beta, ExpNormalization norm) {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw Error(ErrorKind::DomainError, "exp-scheme requires beta != 0");
  }
  auto real = [beta](double t) {
    const double w = (1.0 - t) / (1.0 + t);
    return (1.0 - w) * x_over_sinh(beta * w);
  };
  auto complex = [beta](cplx z) -> std::optional<cplx> {
    const cplx d = 1.0 + z;
    if (std::abs(d) < 1e-12) return std::nullopt;
    const cplx w = (1.0 - z) / d;
    const cplx x = beta * w;
    // Zeros of sinh away from the origin: x = i k pi, k != 0.
    const double k = std::round(x.imag() / kPi);
    if (k != 0.0 && std::abs(x - cplx(0.0, k * kPi)) < 1e-9 * std::max(1.0, std::abs(x))) {
      return std::nullopt;
    }
    return (1.0 - w) * x_over_sinh(x);
  };
  const bool quarter = norm == ExpNormalization::Quarter;
  PetzFunction f(PetzKind::ExpScheme, quarter ? "exp-scheme-quarter" : "exp-scheme", {beta}, real,
                 complex);
  return quarter ? f.scaled(0.25) : f;
}

PetzFunction square_control_function() {
  return PetzFunction(
      PetzKind::SquareControl, "square-control", {}, [](double t) { return t * t; },
      [](cplx z) -> std::optional<cplx> { return z * z; });
}

PetzFunction tabulated_function(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 8) {
    throw Error(ErrorKind::DomainError, "a tabulated function needs >= 8 matching samples");
  }
  std::vector<double> x(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || (i > 0 && !(t[i] > t[i - 1]))) {
      throw Error(ErrorKind::DomainError, "table abscissae must be positive and increasing");
    }
    x[i] = std::log(t[i]);
  }
  const double lo = x.front(), hi = x.back();
  auto interp = std::make_shared<boost::math::barycentric_rational<double>>(
      std::move(x), std::move(values), 6);
  auto real = [interp, lo, hi](double tv) {
    const double lx = std::log(tv);
    if (!(lx >= lo - 1e-12 && lx <= hi + 1e-12)) {
      throw Error(ErrorKind::DomainError, "t outside the tabulated range");
    }
    return (*interp)(lx);
  };
  return PetzFunction(PetzKind::Tabulated, "tabulated", {}, real);
}

PetzFunction catalog(std::string_view id, const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw Error(ErrorKind::DomainError,
                  std::string(id) + " takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (id == "von-neumann" || id == "vn") {
    need(0);
    return von_neumann_function();
  }
  if (id == "tsallis") {
    need(1);
    return tsallis_function(params[0]);
  }
  if (id == "power") {
    need(1);
    return power_function(params[0]);
  }
  if (id == "exp-scheme") {
    need(1);
    return exp_scheme_function(params[0]);
  }
  if (id == "exp-scheme-quarter") {
    need(1);
    return exp_scheme_function(params[0], ExpNormalization::Quarter);
  }
  if (id == "square-control") {
    need(0);
    return square_control_function();
  }
  throw Error(ErrorKind::DomainError, "unknown function id '" + std::string(id) + "'");
}

SpecParts split_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  SpecParts parts{std::string(spec.substr(0, colon)), {}};
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string token(rest.substr(0, comma));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != token.size()) {
        throw Error(ErrorKind::DomainError, "bad parameter '" + token + "' in '" + std::string(spec) + "'");
      }
      parts.params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return parts;
}

PetzFunction parse_function_spec(std::string_view spec) {
  const SpecParts parts = split_spec(spec);
  return catalog(parts.id, parts.params);
}

double symmetry_residual(const PetzFunction& f, double t) { return f(t) - t * f(1.0 / t); }

}  // namespace qig
