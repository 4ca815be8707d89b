#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qig/qubit_core.hpp"

namespace qig {

/// Outcome probabilities (p+, p-) of one frame.
using ProbabilityPair = std::array<double, 2>;

/// Three frames whose dequantizers span the Bloch directions.
class Quorum {
 public:
  /// Throws DomainError unless exactly three frames with linearly
  /// independent measurement directions are given.
  explicit Quorum(std::vector<UnitaryFrame> frames);

  const std::vector<UnitaryFrame>& frames() const { return frames_; }

  /// Row j is the Bloch vector n_j of the dequantizer u_j^dagger |+><+| u_j,
  /// so that p+ of frame j equals (1 + y . n_j) / 2.
  const Eigen::Matrix3d& directions() const { return directions_; }

 private:
  std::vector<UnitaryFrame> frames_;
  Eigen::Matrix3d directions_;
};

struct Tomogram {
  std::vector<UnitaryFrame> frames;
  std::vector<ProbabilityPair> probs;

  /// Throws InconsistentTomogram unless each pair lies in [0,1] and sums to 1
  /// to 1e-14, and the frame and probability lists match in length.
  void validate() const;
};

/// <m| u rho u^dagger |m> for m = +, - (computational basis).
ProbabilityPair tomogram(const QubitDensity& rho, const UnitaryFrame& frame);
Tomogram tomograms(const QubitDensity& rho, const Quorum& quorum);
Tomogram tomograms(const Mat2& state, const Quorum& quorum);

/// exp(i pi sigma_2 / 4), exp(-i pi sigma_1 / 4), 1
Quorum standard_quorum();

/// Frames exp(i pi sigma_phi / 4), exp(-i pi sigma_theta / 4), 1 measured in
/// the sigma_w eigenbasis. The measurement basis is folded into each frame.
Quorum rotated_quorum(double theta, double phi);

/// Inverts p+ = (1 + y . n_j)/2 over the quorum's frames. For the standard
/// quorum this is y_j = 2 W_j - 1.
BlochVector reconstruct_bloch(const Tomogram& t);

/// y_j = sign * sqrt(1 - 1/G_jj)
double bloch_from_tensor(double g_jj, int sign);

/// Scalar map w -> w~ induced by a tomographic scheme on the simplex part of
/// the state. Evaluators are immutable after construction and may be called
/// from any thread.
class SpectralMap {
 public:
  using Fn = std::function<double(double)>;

  SpectralMap(std::string name, std::vector<double> params, Fn value, Fn derivative);

  double operator()(double w) const { return value_(w); }
  double derivative(double w) const { return derivative_(w); }

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }

  /// F(rho) for a state rho: rebuilds the state with the same eigenbasis and
  /// Bloch length w~(w).
  QubitDensity apply(const QubitDensity& rho) const;

 private:
  std::string name_;
  std::vector<double> params_;
  Fn value_;
  Fn derivative_;
};

SpectralMap identity_scheme();

/// F(rho) = exp(-beta rho) / Tr exp(-beta rho), i.e. w~ = -tanh(beta w / 2).
SpectralMap exponential_scheme(double beta);

using MatrixFunction = std::function<Mat2(const Mat2&)>;

/// Reads w~ off F(diag((1+w)/2, (1-w)/2)); the derivative is a central
/// difference with step 1e-5 (one-sided within 2e-5 of the boundary).
/// The map is screened on 512 points for validity and strict monotonicity.
SpectralMap scheme_from_matrix_function(MatrixFunction f, std::string name = "matrix-function");

}  // namespace qig
