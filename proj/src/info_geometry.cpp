#include "qig/info_geometry.hpp"

#include <cmath>

#include "qig/error.hpp"

namespace qig {

namespace {

constexpr double kHessianStep = 1e-4;

void require_interior(double w) {
  if (!(std::abs(w) < 1.0)) {
    throw Error(ErrorKind::Singular, "metric coefficients require w in (-1, 1)");
  }
}

double petz_radial(double w) {
  require_interior(w);
  return 1.0 / (1.0 - w * w);
}

// Mixed second difference of g(s, r) at the origin, one Richardson level.
template <class G>
double mixed_derivative(G&& g, double h) {
  auto stencil = [&](double d) {
    return (g(d, d) - g(d, -d) - g(-d, d) + g(-d, -d)) / (4.0 * d * d);
  };
  return (4.0 * stencil(h) - stencil(2.0 * h)) / 3.0;
}

void check_pair(const ProbabilityPair& p) {
  if (!(p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0) ||
      std::abs(p[0] + p[1] - 1.0) > 1e-12) {
    throw Error(ErrorKind::DomainError, "probability pair must be strictly interior and normalized");
  }
}

}  // namespace

double classical_tsallis_divergence(const ProbabilityPair& p, const ProbabilityPair& pt, double q) {
  check_pair(p);
  check_pair(pt);
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::DomainError, "q must lie in (0, 1)");
  }
  double s = 0.0;
  for (int i = 0; i < 2; ++i) s += std::pow(p[i], q) * std::pow(pt[i], 1.0 - q);
  return (1.0 - s) / (q * (1.0 - q));
}

double quantum_divergence(const DivergenceSpec& spec, const Mat2& rho, const Mat2& sigma) {
  if (spec.kind == DivergenceKind::VonNeumann) {
    auto log_fn = [](double x) { return std::log(x); };
    const Eigen::MatrixXcd d = hermitian_function(rho, log_fn) - hermitian_function(sigma, log_fn);
    return (rho * d).trace().real();
  }
  const double q = spec.q;
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::DomainError, "q must lie in (0, 1)");
  }
  const Eigen::MatrixXcd rq = hermitian_function(rho, [q](double x) { return std::pow(x, q); });
  const Eigen::MatrixXcd sq =
      hermitian_function(sigma, [q](double x) { return std::pow(x, 1.0 - q); });
  return (1.0 - (rq * sq).trace().real()) / (q * (1.0 - q));
}

double fisher_from_divergence(const ProbabilityPair& p, double q) {
  check_pair(p);
  const double x = p[0];
  auto g = [&](double s, double r) {
    return classical_tsallis_divergence({x + s, 1.0 - x - s}, {x + r, 1.0 - x - r}, q);
  };
  return -mixed_derivative(g, kHessianStep);
}

double metric_from_divergence(const DivergenceSpec& spec, const QubitDensity& rho, const Mat2& a,
                              const Mat2& b) {
  const Mat2& r0 = rho.matrix();
  auto g = [&](double s, double r) {
    return quantum_divergence(spec, r0 + s * a, r0 + r * b);
  };
  return -mixed_derivative(g, kHessianStep);
}

double tomographic_tensor(const BlochVector& y, int j) {
  if (j < 0 || j > 2) throw Error(ErrorKind::DomainError, "frame index must be 0, 1 or 2");
  const double yj = y[j];
  if (!(std::abs(yj) < 1.0)) {
    throw Error(ErrorKind::Singular, "tomographic tensor diverges at |y_j| = 1");
  }
  return 1.0 / (1.0 - yj * yj);
}

double tsallis_tangential(double q, double w) {
  if (q == 0.0 || q == 1.0) {
    throw Error(ErrorKind::DomainError, "q must differ from 0 and 1");
  }
  require_interior(w);
  const double p1 = 0.5 * (1.0 + w), p2 = 0.5 * (1.0 - w);
  const double dq = std::pow(p1, q) - std::pow(p2, q);
  const double dp = std::pow(p1, 1.0 - q) - std::pow(p2, 1.0 - q);
  return dq * dp / (2.0 * q * (1.0 - q));
}

MetricCoeffs tsallis_metric(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::DomainError, "Tsallis metric requires q in (0, 1)");
  }
  return {"tsallis", petz_radial, [q](double w) { return tsallis_tangential(q, w); }};
}

MetricCoeffs von_neumann_metric() {
  return {"von-neumann", petz_radial, [](double w) {
            require_interior(w);
            return w * std::atanh(w);
          }};
}

MetricCoeffs petz_metric(const PetzFunction& f) {
  for (int k = 0; k <= 120; ++k) {
    const double t = std::pow(10.0, -6.0 + 0.1 * k);
    double v = 0.0;
    try {
      v = f(t);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DomainError && f.kind() == PetzKind::Tabulated) continue;
      throw;
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidPetzFunction,
                  f.spec() + " is not positive at t = " + std::to_string(t));
    }
  }
  return {"petz:" + f.spec(), petz_radial, [f](double w) {
            require_interior(w);
            const double t = (1.0 - w) / (1.0 + w);
            return w * w / ((1.0 + w) * f(t));
          }};
}

double cm_metric_value(const PetzFunction& f, const QubitDensity& rho, const TangentVector& a,
                       const TangentVector& b) {
  if (!(rho.w() < 1.0)) {
    throw Error(ErrorKind::Singular, "Chentsov-Morozova metric needs a full-rank state");
  }
  const Spectrum s = spectral_decompose(rho);
  const Mat2& u = s.u.u();
  const Mat2 ae = u.adjoint() * a.matrix() * u;
  const Mat2 be = u.adjoint() * b.matrix() * u;
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double pi = s.p[static_cast<std::size_t>(i)];
      const double pj = s.p[static_cast<std::size_t>(j)];
      const double c = 1.0 / (pj * f(pi / pj));
      sum += (ae(j, i) * be(i, j)).real() * c;
    }
  }
  return sum;
}

double conformal_factor(const SpectralMap& map, double w) {
  require_interior(w);
  const double wt = map(w);
  if (!(std::abs(wt) < 1.0)) {
    throw Error(ErrorKind::Singular, "mapped Bloch length reaches the boundary");
  }
  const double d = map.derivative(w);
  return (1.0 - w * w) / (1.0 - wt * wt) * d * d;
}

MetricCoeffs pullback_metric(const MetricCoeffs& g, const SpectralMap& map) {
  return {g.name + "*" + map.name(),
          [g, map](double w) {
            require_interior(w);
            const double d = map.derivative(w);
            return g.g_w(map(w)) * d * d;
          },
          [g, map](double w) {
            require_interior(w);
            return g.g_perp(map(w));
          }};
}

MetricCoeffs conformal_quotient(const MetricCoeffs& g, const SpectralMap& map) {
  return {g.name + "/A",
          [g, map](double w) { return g.g_w(w) / conformal_factor(map, w); },
          [g, map](double w) { return g.g_perp(w) / conformal_factor(map, w); }};
}

PetzFunction extract_petz_function(const MetricCoeffs& g, const ExtractionGrid& grid) {
  if (!(grid.t_min > 0.0 && grid.t_max > grid.t_min) || grid.nodes < 8) {
    throw Error(ErrorKind::DomainError, "bad extraction grid");
  }
  const double lo = std::log(grid.t_min), hi = std::log(grid.t_max);
  std::vector<double> ts(static_cast<std::size_t>(grid.nodes));
  std::vector<double> hs(ts.size());
  for (int k = 0; k < grid.nodes; ++k) {
    const double x = lo + (hi - lo) * k / (grid.nodes - 1);
    const double t = std::exp(x);
    const double w = std::tanh(-0.5 * x);  // (1 - t)/(1 + t)
    double h = 1.0;
    if (std::abs(w) >= 1e-8) {
      const double gp = g.g_perp(w);
      if (!(gp > 0.0)) {
        throw Error(ErrorKind::InvalidMetric,
                    "tangential coefficient is not positive at w = " + std::to_string(w));
      }
      h = w * w / ((1.0 + w) * gp);
    }
    ts[static_cast<std::size_t>(k)] = t;
    hs[static_cast<std::size_t>(k)] = h;
  }
  return tabulated_function(std::move(ts), std::move(hs));
}

}  // namespace qig
