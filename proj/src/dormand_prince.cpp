#include "qig/dormand_prince.hpp"

#include <algorithm>
#include <cmath>

namespace qig {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

double DormandPrince::Step::value(double t) const {
  const double s = (t - t0) / h, s1 = 1.0 - s;
  return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
}

double DormandPrince::Step::derivative(double t) const {
  const double s = (t - t0) / h;
  const double dp = r2 + (1.0 - 2.0 * s) * r3 + s * (2.0 - 3.0 * s) * r4 +
                    2.0 * s * (1.0 - s) * (1.0 - 2.0 * s) * r5;
  return dp / h;
}

DormandPrince::Result DormandPrince::integrate(double t0, double y0, double t1) const {
  Result res;
  res.t = t0;
  res.y = y0;
  const double span = t1 - t0;
  if (span == 0.0) return res;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  double h = opts_.initial_step > 0.0 ? opts_.initial_step : std::abs(span) * 1e-3;
  h *= dir;

  double t = t0, y = y0;
  auto k1o = f_(t, y);
  if (!k1o) {
    res.status = Status::DomainExit;
    return res;
  }
  double k1 = *k1o;

  for (long n = 0; n < opts_.max_steps; ++n) {
    if (opts_.max_step > 0.0 && std::abs(h) > opts_.max_step) h = dir * opts_.max_step;
    // Stretch the step onto t1 instead of leaving a sliver behind.
    const bool last = dir * (t + h - t1) > -opts_.min_step * std::max(1.0, std::abs(t1));
    if (last) h = t1 - t;
    if (std::abs(h) < opts_.min_step * std::max(1.0, std::abs(t))) {
      res.status = Status::StepUnderflow;
      return res;
    }

    auto eval = [&](double tt, double yy) { return f_(tt, yy); };
    std::optional<double> k2, k3, k4, k5, k6, k7;
    double y1 = 0.0;
    bool ok = (k2 = eval(t + c2 * h, y + h * a21 * k1)).has_value() &&
              (k3 = eval(t + c3 * h, y + h * (a31 * k1 + a32 * *k2))).has_value() &&
              (k4 = eval(t + c4 * h, y + h * (a41 * k1 + a42 * *k2 + a43 * *k3))).has_value() &&
              (k5 = eval(t + c5 * h, y + h * (a51 * k1 + a52 * *k2 + a53 * *k3 + a54 * *k4)))
                  .has_value() &&
              (k6 = eval(t + h, y + h * (a61 * k1 + a62 * *k2 + a63 * *k3 + a64 * *k4 +
                                         a65 * *k5)))
                  .has_value();
    if (ok) {
      y1 = y + h * (a71 * k1 + a73 * *k3 + a74 * *k4 + a75 * *k5 + a76 * *k6);
      ok = (k7 = eval(t + h, y1)).has_value();
    }
    if (!ok) {
      h *= 0.5;
      if (std::abs(h) < opts_.min_step * std::max(1.0, std::abs(t))) {
        res.status = Status::DomainExit;
        return res;
      }
      continue;
    }

    const double err_abs =
        std::abs(h * (e1 * k1 + e3 * *k3 + e4 * *k4 + e5 * *k5 + e6 * *k6 + e7 * *k7));
    const double scale = opts_.atol + opts_.rtol * std::max(std::abs(y), std::abs(y1));
    const double err = err_abs / scale;

    double defect = 0.0;
    Step s;
    if (err <= 1.0) {
      s.t0 = t;
      s.h = h;
      s.r1 = y;
      s.r2 = y1 - y;
      s.r3 = h * k1 - s.r2;
      s.r4 = s.r2 - h * *k7 - s.r3;
      s.r5 = h * (d1 * k1 + d3 * *k3 + d4 * *k4 + d5 * *k5 + d6 * *k6 + d7 * *k7);
      if (opts_.defect_tol > 0.0) {
        for (double frac : {1.0 / 3, 2.0 / 3}) {
          const double tm = t + frac * h;
          const auto fm = f_(tm, s.value(tm));
          if (!fm) {
            defect = 2.0;
            break;
          }
          defect = std::max(defect, std::abs(s.derivative(tm) - *fm) /
                                        (opts_.defect_tol * (1.0 + std::abs(*fm))));
        }
      }
    }
    if (err <= 1.0 && defect > 1.0) {
      h *= std::clamp(0.9 * std::pow(defect, -0.25), 0.2, 0.9);
      continue;
    }
    if (err <= 1.0) {
      res.steps.push_back(s);
      t = last ? t1 : t + h;
      y = y1;
      k1 = *k7;
      res.t = t;
      res.y = y;
      if (last) return res;
    }
    const double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::clamp(fac, 0.2, err <= 1.0 ? 5.0 : 1.0);
  }
  res.status = Status::MaxSteps;
  return res;
}

}  // namespace qig
