#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qig {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Pauli matrices, index 0 is the identity.
const Mat2& pauli(int k);

struct BlochVector {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;

  double norm() const;
  double operator[](int j) const { return j == 0 ? y1 : (j == 1 ? y2 : y3); }
};

/// Polar parametrization of a qubit state. w is the Bloch length (w >= 0);
/// the direction is the unit vector (sin theta cos phi, sin theta sin phi, cos theta).
struct Polar {
  double w = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// A 2x2 density matrix together with its polar coordinates. Instances are
/// only produced by the validating factories, so every value is a state.
class QubitDensity {
 public:
  static QubitDensity from_bloch(const BlochVector& y);

  /// Signed w is accepted: w < 0 is stored as (|w|, pi - theta, phi + pi).
  static QubitDensity from_polar(double w, double theta, double phi);

  /// Validates hermiticity and unit trace to 1e-14 and positivity to 1e-12.
  static QubitDensity from_matrix(const Mat2& m);

  const Mat2& matrix() const { return matrix_; }
  const Polar& polar() const { return polar_; }
  double w() const { return polar_.w; }

  /// y_j = Tr(rho sigma_j)
  BlochVector bloch() const;

  /// Eigenvalues ((1 + w)/2, (1 - w)/2), descending.
  std::array<double, 2> eigenvalues() const;

 private:
  QubitDensity(Mat2 m, Polar p) : matrix_(std::move(m)), polar_(p) {}

  Mat2 matrix_;
  Polar polar_;
};

inline QubitDensity density_from_bloch(const BlochVector& y) { return QubitDensity::from_bloch(y); }

class UnitaryFrame {
 public:
  /// Throws DomainError unless u^dagger u = 1 to 1e-14 (scaled by 10 for
  /// products of several factors).
  UnitaryFrame(Mat2 u, std::string label);

  const Mat2& u() const { return u_; }
  const std::string& label() const { return label_; }

 private:
  Mat2 u_;
  std::string label_;
};

class TangentVector {
 public:
  /// Hermitian and traceless to 1e-14.
  explicit TangentVector(Mat2 a);

  const Mat2& matrix() const { return a_; }

 private:
  Mat2 a_;
};

class Channel {
 public:
  /// Kraus completeness sum K^dagger K = 1 is checked to 1e-12.
  explicit Channel(std::vector<Mat2> kraus);

  const std::vector<Mat2>& kraus() const { return kraus_; }

  Mat2 apply(const Mat2& m) const;
  QubitDensity apply(const QubitDensity& rho) const;
  TangentVector apply(const TangentVector& a) const;

  static Channel identity();

 private:
  std::vector<Mat2> kraus_;
};

struct RotatedPauli {
  Mat2 sigma_w;
  Mat2 sigma_theta;
  Mat2 sigma_phi;
};

RotatedPauli rotated_pauli_basis(double theta, double phi);

/// Columns are the +1 and -1 eigenvectors of sigma_w(theta, phi), each with
/// its largest-magnitude component made real and positive.
Mat2 sigma_w_eigenbasis(double theta, double phi);

struct Spectrum {
  std::array<double, 2> p;
  UnitaryFrame u;
};

/// rho = U diag(p) U^dagger with p descending. A degenerate spectrum yields U = 1.
Spectrum spectral_decompose(const QubitDensity& rho);

/// Two Kraus operators obtained by splitting a random 4x2 isometry.
Channel random_channel(std::uint64_t seed);

/// Engine for sample `index` of a run seeded by `seed`. Samples never share
/// a stream, so any partition of indices over workers gives the same draws.
std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index);

/// Uniform in the ball of the given radius.
BlochVector random_bloch(std::mt19937_64& rng, double max_radius = 1.0);

/// Random traceless Hermitian matrix with unit Hilbert-Schmidt norm.
TangentVector random_tangent(std::mt19937_64& rng);

Channel random_channel(std::mt19937_64& rng);

double max_abs(const Eigen::MatrixXcd& m);

/// f applied to a Hermitian matrix through its eigendecomposition.
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& m, const std::function<double(double)>& f);

double min_eigenvalue(const Eigen::MatrixXcd& m);

}  // namespace qig
