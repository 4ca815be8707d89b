#include "qig/qubit_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qig/error.hpp"

namespace qig {

namespace {

constexpr cplx I{0.0, 1.0};

double wrap_angle(double phi) {
  double r = std::fmod(phi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

Polar polar_from_bloch(const BlochVector& y) {
  const double w = y.norm();
  if (w == 0.0) return {0.0, 0.0, 0.0};
  const double c = std::clamp(y.y3 / w, -1.0, 1.0);
  return {w, std::acos(c), wrap_angle(std::atan2(y.y2, y.y1))};
}

Mat2 matrix_from_bloch(const BlochVector& y) {
  return 0.5 * (pauli(0) + y.y1 * pauli(1) + y.y2 * pauli(2) + y.y3 * pauli(3));
}

// Rotate the column so its largest-magnitude entry is real and positive.
Eigen::Vector2cd fix_phase(Eigen::Vector2cd v) {
  const int k = std::abs(v(1)) > std::abs(v(0)) ? 1 : 0;
  const double mag = std::abs(v(k));
  if (mag == 0.0) return v;
  return v * (std::conj(v(k)) / mag);
}

// +1 eigenvector of n.sigma for a unit vector n, chosen from the better
// conditioned of the two closed forms.
Eigen::Vector2cd plus_eigenvector(double n1, double n2, double n3) {
  Eigen::Vector2cd v;
  if (n3 >= 0.0) {
    v << cplx(1.0 + n3, 0.0), cplx(n1, n2);
  } else {
    v << cplx(n1, -n2), cplx(1.0 - n3, 0.0);
  }
  return v / v.norm();
}

Mat2 eigenbasis_from_direction(double n1, double n2, double n3) {
  const Eigen::Vector2cd plus = plus_eigenvector(n1, n2, n3);
  Eigen::Vector2cd minus;
  minus << -std::conj(plus(1)), std::conj(plus(0));
  Mat2 u;
  u.col(0) = fix_phase(plus);
  u.col(1) = fix_phase(minus);
  return u;
}

}  // namespace

const Mat2& pauli(int k) {
  static const std::array<Mat2, 4> sigma = [] {
    std::array<Mat2, 4> s;
    s[0] << 1.0, 0.0, 0.0, 1.0;
    s[1] << 0.0, 1.0, 1.0, 0.0;
    s[2] << 0.0, -I, I, 0.0;
    s[3] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma.at(static_cast<std::size_t>(k));
}

double BlochVector::norm() const { return std::sqrt(y1 * y1 + y2 * y2 + y3 * y3); }

QubitDensity QubitDensity::from_bloch(const BlochVector& y) {
  const double w = y.norm();
  if (!std::isfinite(w) || w > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidState, "Bloch vector norm " + std::to_string(w) + " exceeds 1");
  }
  BlochVector v = y;
  if (w > 1.0) {
    v.y1 /= w;
    v.y2 /= w;
    v.y3 /= w;
  }
  return QubitDensity(matrix_from_bloch(v), polar_from_bloch(v));
}

QubitDensity QubitDensity::from_polar(double w, double theta, double phi) {
  if (w < 0.0) {
    w = -w;
    theta = kPi - theta;
    phi += kPi;
  }
  if (!std::isfinite(w) || w > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidState, "polar radius " + std::to_string(w) + " exceeds 1");
  }
  w = std::min(w, 1.0);
  phi = wrap_angle(phi);
  const BlochVector y{w * std::sin(theta) * std::cos(phi), w * std::sin(theta) * std::sin(phi),
                      w * std::cos(theta)};
  return QubitDensity(matrix_from_bloch(y), Polar{w, theta, phi});
}

QubitDensity QubitDensity::from_matrix(const Mat2& m) {
  if (max_abs(m - m.adjoint()) > 1e-14) {
    throw Error(ErrorKind::InvalidState, "matrix is not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > 1e-14) {
    throw Error(ErrorKind::InvalidState, "trace differs from 1");
  }
  const BlochVector y{(m * pauli(1)).trace().real(), (m * pauli(2)).trace().real(),
                      (m * pauli(3)).trace().real()};
  if (y.norm() > 1.0 + 1e-12) {
    throw Error(ErrorKind::InvalidState, "matrix has a negative eigenvalue");
  }
  const Mat2 h = 0.5 * (m + m.adjoint());
  return QubitDensity(h, polar_from_bloch(y));
}

BlochVector QubitDensity::bloch() const {
  return {(matrix_ * pauli(1)).trace().real(), (matrix_ * pauli(2)).trace().real(),
          (matrix_ * pauli(3)).trace().real()};
}

std::array<double, 2> QubitDensity::eigenvalues() const {
  return {0.5 * (1.0 + polar_.w), 0.5 * (1.0 - polar_.w)};
}

UnitaryFrame::UnitaryFrame(Mat2 u, std::string label) : u_(std::move(u)), label_(std::move(label)) {
  if (max_abs(u_.adjoint() * u_ - Mat2::Identity()) > 1e-14) {
    throw Error(ErrorKind::DomainError, "frame '" + label_ + "' is not unitary");
  }
}

TangentVector::TangentVector(Mat2 a) : a_(std::move(a)) {
  if (max_abs(a_ - a_.adjoint()) > 1e-14 || std::abs(a_.trace()) > 1e-14) {
    throw Error(ErrorKind::DomainError, "tangent vector must be Hermitian and traceless");
  }
}

Channel::Channel(std::vector<Mat2> kraus) : kraus_(std::move(kraus)) {
  Mat2 sum = Mat2::Zero();
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  if (kraus_.empty() || max_abs(sum - Mat2::Identity()) > 1e-12) {
    throw Error(ErrorKind::DomainError, "Kraus operators are not trace preserving");
  }
}

Mat2 Channel::apply(const Mat2& m) const {
  Mat2 out = Mat2::Zero();
  for (const auto& k : kraus_) out += k * m * k.adjoint();
  return out;
}

QubitDensity Channel::apply(const QubitDensity& rho) const {
  Mat2 out = apply(rho.matrix());
  out = 0.5 * (out + out.adjoint());
  out /= out.trace();
  return QubitDensity::from_matrix(out);
}

TangentVector Channel::apply(const TangentVector& a) const {
  Mat2 out = apply(a.matrix());
  out = 0.5 * (out + out.adjoint());
  out -= 0.5 * out.trace() * Mat2::Identity();
  return TangentVector(out);
}

Channel Channel::identity() { return Channel({Mat2::Identity()}); }

RotatedPauli rotated_pauli_basis(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  RotatedPauli r;
  r.sigma_w = st * cp * pauli(1) + st * sp * pauli(2) + ct * pauli(3);
  r.sigma_theta = ct * cp * pauli(1) + ct * sp * pauli(2) - st * pauli(3);
  r.sigma_phi = -sp * pauli(1) + cp * pauli(2);
  return r;
}

Mat2 sigma_w_eigenbasis(double theta, double phi) {
  return eigenbasis_from_direction(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                   std::cos(theta));
}

Spectrum spectral_decompose(const QubitDensity& rho) {
  const BlochVector y = rho.bloch();
  const double w = y.norm();
  if (w < 1e-15) {
    return {{0.5, 0.5}, UnitaryFrame(Mat2::Identity(), "U")};
  }
  const Mat2 u = eigenbasis_from_direction(y.y1 / w, y.y2 / w, y.y3 / w);
  return {{0.5 * (1.0 + w), 0.5 * (1.0 - w)}, UnitaryFrame(u, "U")};
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

BlochVector random_bloch(std::mt19937_64& rng, double max_radius) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
  const double n = std::sqrt(x * x + y * y + z * z);
  const double r = max_radius * std::cbrt(unif(rng));
  return {r * x / n, r * y / n, r * z / n};
}

TangentVector random_tangent(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const double a1 = gauss(rng), a2 = gauss(rng), a3 = gauss(rng);
  Mat2 a = a1 * pauli(1) + a2 * pauli(2) + a3 * pauli(3);
  a /= a.norm();
  return TangentVector(a);
}

Channel random_channel(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Matrix<cplx, 4, 2> g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::Matrix<cplx, 4, 2>> qr(g);
  const Eigen::Matrix<cplx, 4, 2> v = qr.householderQ() * Eigen::Matrix<cplx, 4, 2>::Identity();
  return Channel({v.topRows<2>(), v.bottomRows<2>()});
}

Channel random_channel(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_channel(rng);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& m, const std::function<double(double)>& f) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd fv(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace qig
