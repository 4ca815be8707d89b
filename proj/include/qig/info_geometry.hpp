#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "qig/petz_function.hpp"
#include "qig/qubit_core.hpp"
#include "qig/tomography.hpp"

namespace qig {

/// Rotationally symmetric qubit metric in canonical-polar form,
///   g = g_w(w) dw (x) dw + g_perp(w) (dtheta (x) dtheta + sin^2 theta dphi (x) dphi).
/// Coefficients take the signed Bloch length w in (-1, 1).
struct MetricCoeffs {
  static constexpr std::string_view convention = "canonical-polar";

  std::string name;
  std::function<double(double)> g_w;
  std::function<double(double)> g_perp;
};

enum class DivergenceKind { ClassicalTsallis, QuantumTsallis, VonNeumann };

struct DivergenceSpec {
  DivergenceKind kind = DivergenceKind::ClassicalTsallis;
  double q = 0.5;  // ignored for VonNeumann
};

/// (1 - sum p^q p~^(1-q)) / (q (1 - q))
double classical_tsallis_divergence(const ProbabilityPair& p, const ProbabilityPair& pt, double q);

/// Quantum divergence between two full-rank states: Tsallis
/// (1 - Tr rho^q sigma^(1-q)) / (q(1-q)) or von Neumann Tr rho (ln rho - ln sigma).
double quantum_divergence(const DivergenceSpec& spec, const Mat2& rho, const Mat2& sigma);

/// Fisher coefficient of the binary family (x, 1 - x) at x = p[0]: minus the
/// mixed second derivative of the Tsallis divergence on the diagonal.
/// Central differences with step 1e-4 and one Richardson level.
double fisher_from_divergence(const ProbabilityPair& p, double q);

/// -d_s d_r S(rho + s A, rho + r B) at s = r = 0, by the same difference
/// stencil as fisher_from_divergence. Used as an independent route to the
/// quantum metrics.
double metric_from_divergence(const DivergenceSpec& spec, const QubitDensity& rho, const Mat2& a,
                              const Mat2& b);

/// G_jj = 1/(1 - y_j^2) of frame j (0-based) of the standard quorum.
double tomographic_tensor(const BlochVector& y, int j);

/// Closed-form tangential coefficient of the Tsallis metric,
/// (a_q - b_q)(a_{1-q} - b_{1-q}) / (2 q (1 - q)), for any q outside {0, 1}.
double tsallis_tangential(double q, double w);

MetricCoeffs tsallis_metric(double q);
MetricCoeffs von_neumann_metric();

/// g_w = 1/(1 - w^2), g_perp = w^2 / ((1 + w) f((1 - w)/(1 + w))).
/// f is sampled on t in [1e-6, 1e6] and must be positive there.
MetricCoeffs petz_metric(const PetzFunction& f);

/// Tr(A c_f(L_rho, R_rho)(B)) evaluated in the eigenbasis of rho, where
/// (c_f B)_ij = B_ij / (p_j f(p_i / p_j)).
double cm_metric_value(const PetzFunction& f, const QubitDensity& rho, const TangentVector& a,
                       const TangentVector& b);

/// (1 - w^2) / (1 - w~^2) (dw~/dw)^2
double conformal_factor(const SpectralMap& map, double w);

/// Pullback of g along w -> w~(w): radial g_w(w~) (dw~/dw)^2, tangential g_perp(w~).
MetricCoeffs pullback_metric(const MetricCoeffs& g, const SpectralMap& map);

/// Both coefficients of g divided by the conformal factor of the map.
MetricCoeffs conformal_quotient(const MetricCoeffs& g, const SpectralMap& map);

struct ExtractionGrid {
  double t_min = 1e-4;
  double t_max = 1e4;
  int nodes = 2001;
};

/// Inverts the Petz form: h(t) = w^2 / ((1 + w) g_perp(w)) at t = (1 - w)/(1 + w),
/// tabulated on a log-uniform t grid. h = 1 is used for |w| < 1e-8.
PetzFunction extract_petz_function(const MetricCoeffs& g, const ExtractionGrid& grid = {});

}  // namespace qig
