#include "qig/tomography.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "qig/error.hpp"

namespace qig {

namespace {

// exp(i a sigma) for a Pauli-like sigma with sigma^2 = 1.
Mat2 exp_i_pauli(double angle, const Mat2& sigma) {
  return std::cos(angle) * Mat2::Identity() + cplx(0.0, std::sin(angle)) * sigma;
}

Mat2 diagonal_state(double w) {
  Mat2 rho = Mat2::Zero();
  rho(0, 0) = 0.5 * (1.0 + w);
  rho(1, 1) = 0.5 * (1.0 - w);
  return rho;
}

constexpr double kFdStep = 1e-5;
constexpr int kScreenPoints = 512;

}  // namespace

Quorum::Quorum(std::vector<UnitaryFrame> frames) : frames_(std::move(frames)) {
  if (frames_.size() != 3) {
    throw Error(ErrorKind::DomainError, "a qubit quorum has exactly 3 frames");
  }
  for (int j = 0; j < 3; ++j) {
    const Mat2& u = frames_[static_cast<std::size_t>(j)].u();
    for (int k = 0; k < 3; ++k) {
      directions_(j, k) = (u * pauli(k + 1) * u.adjoint())(0, 0).real();
    }
  }
  if (std::abs(directions_.determinant()) < 1e-8) {
    throw Error(ErrorKind::DomainError, "frames are not informationally complete");
  }
}

void Tomogram::validate() const {
  if (frames.size() != probs.size()) {
    throw Error(ErrorKind::InconsistentTomogram, "frame and probability counts differ");
  }
  for (const auto& p : probs) {
    const bool in_range = p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
    if (!in_range || std::abs(p[0] + p[1] - 1.0) > 1e-14) {
      throw Error(ErrorKind::InconsistentTomogram, "probability pair is not normalized");
    }
  }
}

ProbabilityPair tomogram(const QubitDensity& rho, const UnitaryFrame& frame) {
  const Mat2 m = frame.u() * rho.matrix() * frame.u().adjoint();
  const double plus = std::clamp(m(0, 0).real(), 0.0, 1.0);
  return {plus, 1.0 - plus};
}

Tomogram tomograms(const QubitDensity& rho, const Quorum& quorum) {
  Tomogram t;
  t.frames = quorum.frames();
  for (const auto& f : quorum.frames()) t.probs.push_back(tomogram(rho, f));
  return t;
}

Tomogram tomograms(const Mat2& state, const Quorum& quorum) {
  return tomograms(QubitDensity::from_matrix(state), quorum);
}

Quorum standard_quorum() {
  return Quorum({UnitaryFrame(exp_i_pauli(kPi / 4.0, pauli(2)), "u1"),
                 UnitaryFrame(exp_i_pauli(-kPi / 4.0, pauli(1)), "u2"),
                 UnitaryFrame(Mat2::Identity(), "u3")});
}

Quorum rotated_quorum(double theta, double phi) {
  const RotatedPauli r = rotated_pauli_basis(theta, phi);
  const Mat2 basis = sigma_w_eigenbasis(theta, phi).adjoint();
  return Quorum({UnitaryFrame(basis * exp_i_pauli(kPi / 4.0, r.sigma_phi), "u_theta"),
                 UnitaryFrame(basis * exp_i_pauli(-kPi / 4.0, r.sigma_theta), "u_phi"),
                 UnitaryFrame(basis, "u_w")});
}

BlochVector reconstruct_bloch(const Tomogram& t) {
  t.validate();
  std::vector<UnitaryFrame> frames = t.frames;
  const Quorum quorum(std::move(frames));
  Eigen::Vector3d rhs;
  for (int j = 0; j < 3; ++j) rhs(j) = 2.0 * t.probs[static_cast<std::size_t>(j)][0] - 1.0;
  const Eigen::Vector3d y = quorum.directions().partialPivLu().solve(rhs);
  const BlochVector out{y(0), y(1), y(2)};
  if (out.norm() > 1.0 + 1e-9) {
    throw Error(ErrorKind::InconsistentTomogram,
                "reconstructed Bloch length " + std::to_string(out.norm()) + " exceeds 1");
  }
  return out;
}

double bloch_from_tensor(double g_jj, int sign) {
  if (!(g_jj >= 1.0)) {
    throw Error(ErrorKind::InvalidTensor, "tomographic tensor component must be >= 1");
  }
  const double s = sign < 0 ? -1.0 : 1.0;
  return s * std::sqrt(1.0 - 1.0 / g_jj);
}

SpectralMap::SpectralMap(std::string name, std::vector<double> params, Fn value, Fn derivative)
    : name_(std::move(name)),
      params_(std::move(params)),
      value_(std::move(value)),
      derivative_(std::move(derivative)) {}

QubitDensity SpectralMap::apply(const QubitDensity& rho) const {
  const Spectrum s = spectral_decompose(rho);
  const double wt = value_(rho.w());
  const Mat2 out = s.u.u() * diagonal_state(wt) * s.u.u().adjoint();
  return QubitDensity::from_matrix(0.5 * (out + out.adjoint()));
}

SpectralMap identity_scheme() {
  return SpectralMap("identity", {}, [](double w) { return w; }, [](double) { return 1.0; });
}

SpectralMap exponential_scheme(double beta) {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw Error(ErrorKind::DegenerateScheme, "beta = 0 gives a constant map");
  }
  return SpectralMap(
      "exp", {beta}, [beta](double w) { return -std::tanh(0.5 * beta * w); },
      [beta](double w) {
        const double c = std::cosh(0.5 * beta * w);
        return -beta / (2.0 * c * c);
      });
}

SpectralMap scheme_from_matrix_function(MatrixFunction f, std::string name) {
  auto value = [f](double w) {
    const Mat2 out = f(diagonal_state(w));
    const double off = std::max(std::abs(out(0, 1)), std::abs(out(1, 0)));
    const double imag = std::max(std::abs(out(0, 0).imag()), std::abs(out(1, 1).imag()));
    if (!out.allFinite() || off > 1e-12 || imag > 1e-12 ||
        std::abs(out.trace() - 1.0) > 1e-12 || out(0, 0).real() < -1e-14 ||
        out(1, 1).real() < -1e-14) {
      throw Error(ErrorKind::InvalidScheme, "F does not map diagonal states to diagonal states");
    }
    return out(0, 0).real() - out(1, 1).real();
  };
  auto derivative = [value](double w) {
    const double h = kFdStep;
    if (w > 1.0 - 2.0 * h) {
      return (3.0 * value(w) - 4.0 * value(w - h) + value(w - 2.0 * h)) / (2.0 * h);
    }
    if (w < -1.0 + 2.0 * h) {
      return (-3.0 * value(w) + 4.0 * value(w + h) - value(w + 2.0 * h)) / (2.0 * h);
    }
    return (value(w + h) - value(w - h)) / (2.0 * h);
  };

  double prev = 0.0;
  int sign = 0;
  for (int k = 0; k < kScreenPoints; ++k) {
    const double w = -1.0 + (2.0 * k + 1.0) / kScreenPoints;
    const double wt = value(w);
    if (!(std::abs(wt) < 1.0)) {
      throw Error(ErrorKind::InvalidScheme, "w~ leaves the open interval (-1, 1)");
    }
    if (k > 0) {
      const double d = wt - prev;
      const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
      if (s == 0 || (sign != 0 && s != sign)) {
        throw Error(ErrorKind::NonInvertibleScheme, "sampled map is not strictly monotone");
      }
      sign = s;
    }
    prev = wt;
  }
  return SpectralMap(std::move(name), {}, value, derivative);
}

}  // namespace qig
