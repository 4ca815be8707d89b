#include "qig/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>

#include "qig/error.hpp"
#include "qig/info_geometry.hpp"

namespace qig {

namespace {

struct Indexed {
  std::uint64_t index;
  Witness witness;
};

struct SampleOutcome {
  std::optional<Witness> witness;
  std::uint64_t skipped = 0;
};

// Runs `body` for indices [0, n) across workers and merges the outcomes in
// index order, so the result does not depend on the partition.
MonotonicityReport run_search(std::uint64_t n, unsigned workers,
                              const std::function<SampleOutcome(std::uint64_t)>& body,
                              std::size_t max_witnesses) {
  workers = std::max(1u, workers);
  std::vector<std::vector<Indexed>> found(workers);
  std::vector<std::uint64_t> skipped(workers, 0), counts(workers, 0);
  auto chunk = [&](unsigned w) {
    const std::uint64_t begin = n * w / workers, end = n * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      SampleOutcome out = body(i);
      skipped[w] += out.skipped;
      if (out.witness) {
        ++counts[w];
        if (found[w].size() < max_witnesses) found[w].push_back({i, std::move(*out.witness)});
      }
    }
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
    for (auto& t : pool) t.join();
  }
  MonotonicityReport r;
  for (unsigned w = 0; w < workers; ++w) {
    r.skipped += skipped[w];
    r.violations += counts[w];
    for (auto& item : found[w]) {
      if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(std::move(item.witness));
    }
  }
  r.samples = n;
  return r;
}

Eigen::MatrixXcd gaussian_matrix(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

void finish(MonotonicityReport& r, const PetzFunction& f, const std::string& test,
            std::uint64_t seed, double tolerance, bool randomized) {
  r.function = f.id();
  r.params = f.params();
  r.test = test;
  r.seed = seed;
  r.tolerance = tolerance;
  if (r.violations > 0) {
    r.verdict = Verdict::Violation;
  } else if (!randomized) {
    r.verdict = Verdict::Pass;
    r.note = "no witness on the scanned grid (scan-limited)";
  } else if (loewner_prescreen(f)) {
    r.verdict = Verdict::Pass;
    r.note = "no witness in the drawn samples (sample-limited)";
  } else {
    r.verdict = Verdict::Inconclusive;
    r.note = "no witness in the drawn samples, but the upper half-plane image leaves the half-plane";
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Violation: return "violation";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MonotonicityReport loewner_scan(const PetzFunction& f, const Region& region,
                                const GridResolution& grid, double tolerance,
                                std::size_t max_witnesses) {
  if (!f.has_complex_extension()) {
    throw Error(ErrorKind::DomainError, f.spec() + " has no complex extension to scan");
  }
  if (!(region.im_min >= 0.0 && region.im_max > region.im_min && region.re_max > region.re_min) ||
      grid.re < 2 || grid.im < 1) {
    throw Error(ErrorKind::DomainError, "scan region must lie in the open upper half-plane");
  }
  const auto nre = static_cast<std::uint64_t>(grid.re);
  const auto nim = static_cast<std::uint64_t>(grid.im);
  auto body = [&](std::uint64_t idx) -> SampleOutcome {
    const std::uint64_t i = idx % nre, k = idx / nre;
    const double re = region.re_min + (region.re_max - region.re_min) * static_cast<double>(i) /
                                          static_cast<double>(nre - 1);
    const double im = region.im_min + (region.im_max - region.im_min) *
                                          static_cast<double>(k + 1) / static_cast<double>(nim);
    const cplx z(re, im);
    const auto v = f.complex_value(z);
    if (!v || !std::isfinite(v->real()) || !std::isfinite(v->imag())) return {std::nullopt, 1};
    if (v->imag() < -tolerance) return {Witness(LoewnerWitness{z, *v}), 0};
    return {};
  };
  MonotonicityReport r = run_search(nre * nim, 1, body, max_witnesses);
  finish(r, f, "loewner", 0, tolerance, false);
  return r;
}

MatrixPairCheck check_matrix_pair(const PetzFunction& f, const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b) {
  auto fn = [&f](double x) { return f(x); };
  const Eigen::MatrixXcd d = hermitian_function(b, fn) - hermitian_function(a, fn);
  return {min_eigenvalue(hermitian_part(b - a)), min_eigenvalue(hermitian_part(d))};
}

MonotonicityReport matrix_monotonicity_test(const PetzFunction& f, const SearchOptions& opts) {
  if (opts.dim != 2 && opts.dim != 3) {
    throw Error(ErrorKind::DomainError, "matrix test supports dimension 2 or 3");
  }
  const int dim = opts.dim;
  auto body = [&](std::uint64_t i) -> SampleOutcome {
    std::mt19937_64 rng = sample_engine(opts.seed, i);
    std::uniform_real_distribution<double> unif;
    const Eigen::MatrixXcd m1 = gaussian_matrix(rng, dim);
    const double eps = std::pow(10.0, -3.0 + 3.0 * unif(rng));
    const Eigen::MatrixXcd a =
        hermitian_part(m1.adjoint() * m1 / dim + eps * Eigen::MatrixXcd::Identity(dim, dim));
    const Eigen::MatrixXcd m2 = gaussian_matrix(rng, dim);
    Eigen::MatrixXcd p = m2.adjoint() * m2;
    const double magnitude = std::pow(10.0, -3.0 + 4.0 * unif(rng));
    p *= magnitude / p.trace().real();
    const Eigen::MatrixXcd b = hermitian_part(a + p);
    const MatrixPairCheck c = check_matrix_pair(f, a, b);
    if (std::isfinite(c.image_min_eigenvalue) && c.image_min_eigenvalue < -opts.tolerance) {
      return {Witness(MatrixWitness{i, a, b, c.image_min_eigenvalue}), 0};
    }
    if (!std::isfinite(c.image_min_eigenvalue)) return {std::nullopt, 1};
    return {};
  };
  MonotonicityReport r = run_search(opts.samples, opts.workers, body, opts.max_witnesses);
  finish(r, f, "matrix", opts.seed, opts.tolerance, true);
  return r;
}

MetricGap metric_monotonicity_gap(const PetzFunction& f, const QubitDensity& rho,
                                  const TangentVector& a, const Channel& channel) {
  const QubitDensity out = channel.apply(rho);
  const TangentVector image = channel.apply(a);
  return {cm_metric_value(f, out, image, image), cm_metric_value(f, rho, a, a)};
}

MonotonicityReport metric_monotonicity_test(const PetzFunction& f, const SearchOptions& opts) {
  constexpr int kMaxRedraws = 64;
  auto body = [&](std::uint64_t i) -> SampleOutcome {
    std::mt19937_64 rng = sample_engine(opts.seed, i);
    SampleOutcome out;
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const BlochVector y = random_bloch(rng, 0.98);
      const QubitDensity rho = QubitDensity::from_bloch(y);
      const TangentVector a = random_tangent(rng);
      const Channel phi = random_channel(rng);
      if (phi.apply(rho).w() > 1.0 - 1e-6) {
        ++out.skipped;
        continue;
      }
      const MetricGap g = metric_monotonicity_gap(f, rho, a, phi);
      if (g.lhs - g.rhs > opts.tolerance * std::max(1.0, g.rhs)) {
        out.witness = Witness(ChannelWitness{i, y, a.matrix(), phi.kraus(), g.lhs, g.rhs});
      }
      return out;
    }
    return out;
  };
  MonotonicityReport r = run_search(opts.samples, opts.workers, body, opts.max_witnesses);
  finish(r, f, "cptp", opts.seed, opts.tolerance, true);
  return r;
}

bool loewner_prescreen(const PetzFunction& f) {
  if (!f.has_complex_extension()) return true;
  const MonotonicityReport wide = loewner_scan(f, Region{}, GridResolution{200, 100});
  if (wide.violations > 0) return false;
  const MonotonicityReport near = loewner_scan(f, Region{-1.2, -0.8, 0.0, 0.2}, GridResolution{81, 40});
  return near.violations == 0;
}

bool reverify(const MonotonicityReport& report, const PetzFunction& f) {
  const double tol = report.tolerance;
  for (const auto& w : report.witnesses) {
    bool ok = false;
    if (const auto* lw = std::get_if<LoewnerWitness>(&w)) {
      const auto v = f.complex_value(lw->z);
      ok = v && v->imag() < -tol;
    } else if (const auto* mw = std::get_if<MatrixWitness>(&w)) {
      const MatrixPairCheck c = check_matrix_pair(f, mw->a, mw->b);
      ok = c.gap_min_eigenvalue >= -1e-12 && c.image_min_eigenvalue < -tol;
    } else if (const auto* cw = std::get_if<ChannelWitness>(&w)) {
      const MetricGap g = metric_monotonicity_gap(f, QubitDensity::from_bloch(cw->state),
                                                  TangentVector(cw->tangent), Channel(cw->kraus));
      ok = g.lhs - g.rhs > tol * std::max(1.0, g.rhs);
    }
    if (!ok) return false;
  }
  return (report.verdict == Verdict::Violation) == !report.witnesses.empty();
}

}  // namespace qig
