#include "qig/scheme_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "qig/dormand_prince.hpp"
#include "qig/info_geometry.hpp"

namespace qig {

namespace {

constexpr double kDefaultInner = 0.01;
constexpr double kDefaultOuter = 0.99;
constexpr double kResidualBound = 1e-8;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double to_t(double x) { return (1.0 - x) / (1.0 + x); }

std::pair<double, double> resolve_range(double w0, double w_min, double w_max) {
  if (w_min == 0.0 && w_max == 0.0) {
    return w0 > 0.0 ? std::pair{kDefaultInner, kDefaultOuter}
                    : std::pair{-kDefaultOuter, -kDefaultInner};
  }
  if (!(w_min < w_max) || !(w_min > -1.0 && w_max < 1.0)) {
    throw Error(ErrorKind::DomainError, "range must be an interval inside (-1, 1)");
  }
  if (w_min <= 0.0 && w_max >= 0.0) {
    throw Error(ErrorKind::RemovableSingularity, "range must not contain w = 0");
  }
  if (w0 < w_min || w0 > w_max) {
    throw Error(ErrorKind::DomainError, "w0 must lie in the integration range");
  }
  return {w_min, w_max};
}

std::vector<double> output_grid(double lo, double hi, int n, double w0) {
  if (n < 2) throw Error(ErrorKind::DomainError, "output grid needs at least 2 points");
  std::vector<double> ws;
  ws.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) {
    ws.push_back(k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1));
  }
  const auto it = std::lower_bound(ws.begin(), ws.end(), w0);
  if (it == ws.end() || std::abs(*it - w0) > 1e-15 * std::max(1.0, std::abs(w0))) {
    ws.insert(it, w0);
  } else {
    *it = w0;
  }
  return ws;
}

void finalize(OdeSolution& sol) {
  sol.residual_max = 0.0;
  for (const auto& p : sol.grid) sol.residual_max = std::max(sol.residual_max, p.residual);
}

void require_monotone(const OdeSolution& sol) {
  for (std::size_t i = 1; i < sol.grid.size(); ++i) {
    const double d = sol.grid[i].wt - sol.grid[i - 1].wt;
    if (!(d * sol.branch > 0.0)) {
      throw SolveError(ErrorKind::BranchFailure,
                       "solution is not strictly monotone near w = " +
                           std::to_string(sol.grid[i].w),
                       sol);
    }
  }
}

// Dense output over the accepted steps of both integration directions.
class DenseSolution {
 public:
  void add(const std::vector<DormandPrince::Step>& steps) {
    for (const auto& s : steps) {
      const double a = s.t0, b = s.t0 + s.h;
      pieces_.push_back({std::min(a, b), std::max(a, b), s});
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  }

  const DormandPrince::Step* find(double w) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), w,
                               [](double v, const Piece& p) { return v < p.lo; });
    if (it != pieces_.begin()) {
      const Piece& p = *std::prev(it);
      if (w <= p.hi) return &p.step;
    }
    if (it != pieces_.end() && std::abs(it->lo - w) < 1e-15) return &it->step;
    return nullptr;
  }

 private:
  struct Piece {
    double lo, hi;
    DormandPrince::Step step;
  };
  std::vector<Piece> pieces_;
};

}  // namespace

std::string to_string(SolutionSource s) {
  switch (s) {
    case SolutionSource::Numeric: return "numeric";
    case SolutionSource::SeparableQuadrature: return "separable-quadrature";
    case SolutionSource::ClosedForm: return "closed-form";
  }
  return "numeric";
}

SpectralMap OdeSolution::as_map() const {
  if (grid.size() < 2) throw Error(ErrorKind::DomainError, "solution grid is too short");
  std::vector<double> x, y, dy;
  for (const auto& p : grid) {
    x.push_back(p.w);
    y.push_back(p.wt);
    dy.push_back(p.dwt);
  }
  const double lo = x.front(), hi = x.back();
  using Spline = boost::math::interpolators::cubic_hermite<std::vector<double>>;
  auto spline = std::make_shared<Spline>(std::move(x), std::move(y), std::move(dy));
  auto check = [lo, hi](double w) {
    if (w < lo || w > hi) {
      throw Error(ErrorKind::DomainError, "w = " + std::to_string(w) + " is outside the solution grid");
    }
  };
  return SpectralMap(
      "ode-solution", {},
      [spline, check](double w) {
        check(w);
        return (*spline)(w);
      },
      [spline, check](double w) {
        check(w);
        return spline->prime(w);
      });
}

double ode_rhs(const PetzFunction& f, const PetzFunction& h, double w, double wt) {
  if (w == 0.0) {
    throw Error(ErrorKind::RemovableSingularity, "ode right-hand side is singular at w = 0");
  }
  if (!(std::abs(w) < 1.0) || !(std::abs(wt) < 1.0)) {
    throw Error(ErrorKind::DomainError, "w and w~ must lie in (-1, 1)");
  }
  const double hv = h(to_t(w));
  const double fv = f(to_t(wt));
  if (!(hv > 0.0) || !(fv > 0.0)) {
    throw Error(ErrorKind::InvalidPetzFunction, "Petz function is not positive along the solution");
  }
  const double r = wt / w;
  return r * r * (1.0 - wt) / (1.0 - w) * hv / fv;
}

OdeSolution solve_ode(const PetzFunction& f, const PetzFunction& h, double w0, double wt0,
                      int branch, const OdeOptions& opts) {
  if (w0 == 0.0) {
    throw Error(ErrorKind::RemovableSingularity, "w0 = 0 is a removable singularity; seed off zero");
  }
  if (branch != 1 && branch != -1) throw Error(ErrorKind::DomainError, "branch must be +1 or -1");
  if (!(std::abs(w0) < 1.0) || !(std::abs(wt0) < 1.0)) {
    throw Error(ErrorKind::DomainError, "initial data must lie in (-1, 1)");
  }
  if (wt0 == 0.0) {
    throw Error(ErrorKind::BranchFailure, "RHS vanishes at w~0 = 0");
  }
  const auto [lo, hi] = resolve_range(w0, opts.w_min, opts.w_max);
  const double side = sign_of(wt0);
  const double dir_w = sign_of(w0);

  // Leaving the open interval or crossing w~ = 0 is reported as a domain exit.
  DormandPrince::Rhs rhs = [&](double w, double wt) -> std::optional<double> {
    if (!(std::abs(wt) < 1.0) || wt * side <= 0.0 || w * dir_w <= 0.0) return std::nullopt;
    return branch * std::sqrt(ode_rhs(f, h, w, wt));
  };
  DormandPrince::Options dp;
  dp.rtol = opts.rtol;
  dp.atol = opts.atol;
  dp.defect_tol = opts.defect_tol;
  dp.max_step = opts.max_step_fraction > 0.0 ? opts.max_step_fraction * (hi - lo) : 0.0;
  const DormandPrince solver(rhs, dp);

  const auto fwd = solver.integrate(w0, wt0, hi);
  const auto bwd = solver.integrate(w0, wt0, lo);
  DenseSolution dense;
  dense.add(fwd.steps);
  dense.add(bwd.steps);

  OdeSolution sol;
  sol.branch = branch;
  sol.source = SolutionSource::Numeric;
  for (double w : output_grid(lo, hi, opts.output_points, w0)) {
    OdePoint p;
    p.w = w;
    if (w == w0) {
      p.wt = wt0;
      p.dwt = *rhs(w0, wt0);
    } else {
      const auto* step = dense.find(w);
      if (!step) continue;
      p.wt = step->value(w);
      p.dwt = step->derivative(w);
    }
    if (!(std::abs(p.wt) < 1.0)) continue;
    p.residual = std::abs(p.dwt * p.dwt - ode_rhs(f, h, w, p.wt));
    sol.grid.push_back(p);
  }
  finalize(sol);

  for (const auto* r : {&fwd, &bwd}) {
    using S = DormandPrince::Status;
    if (r->status == S::Done) continue;
    const std::string at = " at w = " + std::to_string(r->t);
    if (std::abs(r->y) > 0.99) {
      throw SolveError(ErrorKind::RangeEscape, "solution leaves (-1, 1)" + at, sol);
    }
    if (r->status == S::DomainExit) {
      if (std::abs(r->y) > 0.5) {
        throw SolveError(ErrorKind::RangeEscape, "solution leaves (-1, 1)" + at, sol);
      }
      throw SolveError(ErrorKind::BranchFailure, "solution reaches w~ = 0" + at, sol);
    }
    throw SolveError(ErrorKind::StepFailure, "step size underflow" + at, sol);
  }
  require_monotone(sol);
  if (!(sol.residual_max < kResidualBound)) {
    throw SolveError(ErrorKind::StepFailure,
                     "ODE residual " + std::to_string(sol.residual_max) + " exceeds the bound",
                     sol);
  }
  return sol;
}

OdeSolution solve_separable_power(double a, double b, double w0, double wt0,
                                  const SeparableOptions& opts) {
  if (!(a >= 0.0 && a <= 0.5 && b >= 0.0 && b <= 0.5)) {
    throw Error(ErrorKind::DomainError, "power exponents must lie in [0, 1/2]");
  }
  if (!(w0 > 0.0 && w0 < 1.0)) throw Error(ErrorKind::DomainError, "w0 must lie in (0, 1)");
  if (!(std::abs(wt0) < 1.0) || wt0 == 0.0) {
    throw Error(ErrorKind::DomainError, "w~0 must lie in (-1, 0) or (0, 1)");
  }
  const auto [lo, hi] = resolve_range(w0, opts.w_min, opts.w_max);
  const double side = sign_of(wt0);

  auto phi = [a](double x) { return 1.0 / (x * std::pow(1.0 - x, 0.5 - a) * std::pow(1.0 + x, a)); };
  auto psi = [b](double w) { return 1.0 / (w * std::pow(1.0 - w, 0.5 - b) * std::pow(1.0 + w, b)); };

  boost::math::quadrature::tanh_sinh<double> quad;
  auto integrate = [&quad](const std::function<double(double)>& g, double x0, double x1) {
    if (x0 == x1) return 0.0;
    const double s = x0 < x1 ? 1.0 : -1.0;
    double err = 0.0, l1 = 0.0;
    const double v = quad.integrate(g, std::min(x0, x1), std::max(x0, x1), 1e-14, &err, &l1);
    if (!std::isfinite(v) || err > 1e-10 * std::max(1.0, l1)) {
      throw Error(ErrorKind::EndpointSingularity,
                  "quadrature did not converge on [" + std::to_string(x0) + ", " +
                      std::to_string(x1) + "]");
    }
    return s * v;
  };
  const std::function<double(double)> phi_fn = phi, psi_fn = psi;

  // On either side, x -> Phi(x) - Phi(w~0) covers (-inf, phi_outer).
  const double outer = side * 1.0;
  const double phi_outer = integrate(phi_fn, wt0, outer);

  OdeSolution sol;
  sol.branch = static_cast<int>(sign_of(w0 * wt0));
  sol.source = SolutionSource::SeparableQuadrature;
  for (double w : output_grid(lo, hi, opts.output_points, w0)) {
    const double target = integrate(psi_fn, w0, w);
    OdePoint p;
    p.w = w;
    if (w == w0) {
      p.wt = wt0;
    } else {
      if (target >= phi_outer) {
        throw SolveError(ErrorKind::RangeEscape,
                         "separable solution leaves (-1, 1) before w = " + std::to_string(w),
                         sol);
      }
      auto residual = [&](double x) { return integrate(phi_fn, wt0, x) - target; };
      // Phi is increasing on (0, 1) and decreasing on (-1, 0).
      double x_lo, x_hi;
      if (side > 0.0) {
        x_lo = target > 0.0 ? wt0 : 1e-30;
        x_hi = target > 0.0 ? std::nextafter(1.0, 0.0) : wt0;
      } else {
        x_lo = target > 0.0 ? std::nextafter(-1.0, 0.0) : wt0;
        x_hi = target > 0.0 ? wt0 : -1e-30;
      }
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          residual, x_lo, x_hi, boost::math::tools::eps_tolerance<double>(52), iters);
      p.wt = 0.5 * (bracket.first + bracket.second);
    }
    p.dwt = psi(w) / phi(p.wt);
    const double t = to_t(w), tt = to_t(p.wt);
    const double rhs = (p.wt / w) * (p.wt / w) * (1.0 - p.wt) / (1.0 - w) * std::pow(t, 2.0 * b) /
                       std::pow(tt, 2.0 * a);
    p.residual = std::abs(p.dwt * p.dwt - rhs);
    sol.grid.push_back(p);
  }
  finalize(sol);
  require_monotone(sol);
  return sol;
}

OdeSolution closed_form_solution(const SpectralMap& map, const PetzFunction& f,
                                 const PetzFunction& h, double w_min, double w_max, int points) {
  const auto [lo, hi] = resolve_range(w_min, w_min, w_max);
  OdeSolution sol;
  sol.source = SolutionSource::ClosedForm;
  sol.branch = map.derivative(0.5 * (lo + hi)) < 0.0 ? -1 : 1;
  for (double w : output_grid(lo, hi, points, lo)) {
    OdePoint p;
    p.w = w;
    p.wt = map(w);
    p.dwt = map.derivative(w);
    p.residual = std::abs(p.dwt * p.dwt - ode_rhs(f, h, w, p.wt));
    sol.grid.push_back(p);
  }
  finalize(sol);
  require_monotone(sol);
  return sol;
}

VerificationRecord verify_solution(const OdeSolution& sol, const PetzFunction& f,
                                   const PetzFunction& h, double bound) {
  VerificationRecord rec;
  rec.f = f.spec();
  rec.h = h.spec();
  rec.source = to_string(sol.source);
  rec.points = sol.grid.size();
  rec.bound = bound;
  const SpectralMap map = sol.as_map();
  const MetricCoeffs gf = pullback_metric(petz_metric(f), map);
  const MetricCoeffs gh = petz_metric(h);
  bool finite = !sol.grid.empty();
  for (const auto& p : sol.grid) {
    try {
      const double r = std::abs(p.dwt * p.dwt - ode_rhs(f, h, p.w, p.wt));
      const double conf = conformal_factor(map, p.w);
      const double rw = std::abs(gf.g_w(p.w) - conf * gh.g_w(p.w));
      const double rp = std::abs(gf.g_perp(p.w) - conf * gh.g_perp(p.w));
      if (!std::isfinite(r) || !std::isfinite(rw) || !std::isfinite(rp)) finite = false;
      rec.ode_residual_max = std::max(rec.ode_residual_max, r);
      rec.factorization_residual_max = std::max({rec.factorization_residual_max, rw, rp});
    } catch (const Error&) {
      finite = false;
    }
  }
  rec.passed = finite && rec.ode_residual_max < bound && rec.factorization_residual_max < bound;
  return rec;
}

double exponential_seed(double beta, double w0) { return -std::tanh(0.5 * beta * w0); }

}  // namespace qig
