#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qig/petz_function.hpp"
#include "qig/qubit_core.hpp"

namespace qig {

enum class Verdict { Pass, Violation, Inconclusive };

std::string to_string(Verdict v);

struct LoewnerWitness {
  cplx z;
  cplx value;
};

struct MatrixWitness {
  std::uint64_t sample = 0;
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
  double min_eigenvalue = 0.0;  // of f(B) - f(A)
};

struct ChannelWitness {
  std::uint64_t sample = 0;
  BlochVector state;
  Mat2 tangent;
  std::vector<Mat2> kraus;
  double lhs = 0.0;  // g_{phi(rho)}(phi(A), phi(A))
  double rhs = 0.0;  // g_rho(A, A)
};

using Witness = std::variant<LoewnerWitness, MatrixWitness, ChannelWitness>;

/// Outcome of a scan or randomized search. A Pass is always limited to the
/// points or samples examined; it is never a proof of monotonicity.
struct MonotonicityReport {
  std::string function;
  std::vector<double> params;
  std::string test;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Witness> witnesses;  // first max_witnesses, in sample order
  std::uint64_t violations = 0;    // total count, may exceed witnesses.size()
  std::uint64_t samples = 0;
  std::uint64_t skipped = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string note;
};

/// Rectangle re in [re_min, re_max], im in (im_min, im_max].
struct Region {
  double re_min = -10.0;
  double re_max = 10.0;
  double im_min = 0.0;
  double im_max = 2.0;
};

struct GridResolution {
  int re = 400;
  int im = 200;
};

inline constexpr double kLoewnerTolerance = 1e-10;
inline constexpr double kMatrixTolerance = 1e-9;

/// Evaluates Im f(z) on the grid; points where Im f(z) < -tolerance are
/// violations. Singular or non-finite points are skipped and counted.
MonotonicityReport loewner_scan(const PetzFunction& f, const Region& region,
                                const GridResolution& grid = {},
                                double tolerance = kLoewnerTolerance,
                                std::size_t max_witnesses = 16);

struct SearchOptions {
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = kMatrixTolerance;
  int dim = 2;        // matrix test only: 2 or 3
  unsigned workers = 1;
  std::size_t max_witnesses = 8;
};

/// Samples A > 0 and B = A + P with P = M^dagger M scaled into [1e-3, 10];
/// a violation is min eig(f(B) - f(A)) < -tolerance.
MonotonicityReport matrix_monotonicity_test(const PetzFunction& f, const SearchOptions& opts);

struct MatrixPairCheck {
  double gap_min_eigenvalue;    // min eig(B - A)
  double image_min_eigenvalue;  // min eig(f(B) - f(A))
};

MatrixPairCheck check_matrix_pair(const PetzFunction& f, const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b);

struct MetricGap {
  double lhs;  // g_{phi(rho)}(phi(A), phi(A))
  double rhs;  // g_rho(A, A)
};

MetricGap metric_monotonicity_gap(const PetzFunction& f, const QubitDensity& rho,
                                  const TangentVector& a, const Channel& channel);

/// Samples (state, tangent, channel) triples; a violation is
/// lhs - rhs > tolerance * max(1, rhs). Channel outputs within 1e-6 of a pure
/// state are resampled and counted as skipped.
MonotonicityReport metric_monotonicity_test(const PetzFunction& f, const SearchOptions& opts);

/// True when the default box and the box around z = -1 contain no Loewner
/// witness. Used to tell Pass from Inconclusive when a randomized search
/// finds nothing.
bool loewner_prescreen(const PetzFunction& f);

/// Re-checks every witness of the report against f.
bool reverify(const MonotonicityReport& report, const PetzFunction& f);

}  // namespace qig
