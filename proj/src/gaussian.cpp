#include "chronoscv/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chronoscv::gauss {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kPhysTol = -1e-9;
}  // namespace

MatrixXd symplectic_form(int n_modes) {
  if (n_modes <= 0) throw std::invalid_argument("symplectic_form: n_modes must be positive");
  MatrixXd omega = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

GaussianState make_reference_state(ReferenceKind kind, const std::vector<double>& params) {
  GaussianState g;
  g.kind = kind;
  g.kind_params = params;
  switch (kind) {
    case ReferenceKind::kVacuum: {
      if (!params.empty()) throw std::invalid_argument("vacuum takes no parameters");
      g.n_modes = 1;
      g.mean = VectorXd::Zero(2);
      g.cov = MatrixXd::Identity(2, 2);
      break;
    }
    case ReferenceKind::kThermal: {
      if (params.size() != 1 || params[0] < 0.0)
        throw std::invalid_argument("thermal takes one parameter nbar >= 0");
      g.n_modes = 1;
      g.mean = VectorXd::Zero(2);
      g.cov = (2.0 * params[0] + 1.0) * MatrixXd::Identity(2, 2);
      break;
    }
    case ReferenceKind::kCoherent: {
      if (params.size() != 2) throw std::invalid_argument("coherent takes {re_alpha, im_alpha}");
      g.n_modes = 1;
      g.mean = VectorXd(2);
      // alpha = (q + i p) / sqrt(2)
      g.mean << std::sqrt(2.0) * params[0], std::sqrt(2.0) * params[1];
      g.cov = MatrixXd::Identity(2, 2);
      break;
    }
    case ReferenceKind::kTmss: {
      if (params.size() != 1) throw std::invalid_argument("tmss takes one parameter r");
      const double c = std::cosh(2.0 * params[0]);
      const double s = std::sinh(2.0 * params[0]);
      g.n_modes = 2;
      g.mean = VectorXd::Zero(4);
      g.cov = MatrixXd::Zero(4, 4);
      g.cov << c, 0, s, 0,
               0, c, 0, -s,
               s, 0, c, 0,
               0, -s, 0, c;
      break;
    }
  }
  return g;
}

void validate_state(const GaussianState& g) {
  if (g.n_modes <= 0) throw std::invalid_argument("GaussianState: n_modes must be positive");
  const int d = 2 * g.n_modes;
  if (g.mean.size() != d) throw std::invalid_argument("GaussianState: mean has wrong length");
  if (g.cov.rows() != d || g.cov.cols() != d)
    throw std::invalid_argument("GaussianState: cov has wrong shape");
  if (symmetry_residual(g.cov) > kSymTol)
    throw std::invalid_argument("GaussianState: cov is not symmetric");
}

UncertaintyReport check_uncertainty(const GaussianState& g) {
  validate_state(g);
  const int d = 2 * g.n_modes;
  MatrixXcd h = g.cov.cast<Scalar>() + Scalar(0, 1) * symplectic_form(g.n_modes).cast<Scalar>();
  UncertaintyReport rep;
  rep.min_eig = min_eigenvalue(h);
  rep.physical = rep.min_eig >= kPhysTol;
  (void)d;
  return rep;
}

Scalar char_function(const GaussianState& g, const VectorXd& xi) {
  validate_state(g);
  if (xi.size() != g.mean.size()) throw std::invalid_argument("char_function: xi has wrong length");
  const MatrixXd omega = symplectic_form(g.n_modes);
  const MatrixXd a = omega * g.cov * omega.transpose();
  const double quad = -0.25 * xi.dot(a * xi);
  const double lin = -(omega * g.mean).dot(xi);
  return std::exp(quad) * Scalar(std::cos(lin), std::sin(lin));
}

double wigner(const GaussianState& g, const VectorXd& x, double reg) {
  validate_state(g);
  if (x.size() != g.mean.size()) throw std::invalid_argument("wigner: x has wrong length");
  if (reg < 0.0) throw std::invalid_argument("wigner: reg must be >= 0");
  const int d = 2 * g.n_modes;
  MatrixXd sigma = g.cov + reg * MatrixXd::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sigma);
  const VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() <= 0.0) {
    int k = 0;
    evals.minCoeff(&k);
    std::ostringstream msg;
    msg << "wigner: covariance is singular along direction [";
    for (int i = 0; i < d; ++i) msg << (i ? ", " : "") << es.eigenvectors().col(k)(i);
    msg << "] (eigenvalue " << evals(k) << "); pass reg > 0";
    throw std::domain_error(msg.str());
  }
  const VectorXd y = x - g.mean;
  const VectorXd z = es.eigenvectors().transpose() * y;
  double quad = 0.0, logdet = 0.0;
  for (int i = 0; i < d; ++i) {
    quad += z(i) * z(i) / evals(i);
    logdet += std::log(evals(i));
  }
  return std::exp(-quad - 0.5 * logdet) / std::pow(M_PI, g.n_modes);
}

GaussianState partial_trace(const GaussianState& g, const std::vector<int>& keep) {
  validate_state(g);
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be non-empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= g.n_modes)
      throw std::invalid_argument("partial_trace: mode index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  }
  GaussianState out;
  out.n_modes = static_cast<int>(keep.size());
  out.mean = VectorXd(2 * out.n_modes);
  out.cov = MatrixXd(2 * out.n_modes, 2 * out.n_modes);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.mean.segment<2>(2 * a) = g.mean.segment<2>(2 * keep[a]);
    for (std::size_t b = 0; b < keep.size(); ++b)
      out.cov.block<2, 2>(2 * a, 2 * b) = g.cov.block<2, 2>(2 * keep[a], 2 * keep[b]);
  }
  return out;
}

GaussianState partial_transpose(const GaussianState& g, const std::vector<int>& modes) {
  validate_state(g);
  VectorXd flip = VectorXd::Ones(2 * g.n_modes);
  for (int m : modes) {
    if (m < 0 || m >= g.n_modes)
      throw std::invalid_argument("partial_transpose: mode index out of range");
    flip(2 * m + 1) = -1.0;
  }
  GaussianState out;
  out.n_modes = g.n_modes;
  out.mean = flip.asDiagonal() * g.mean;
  out.cov = flip.asDiagonal() * g.cov * flip.asDiagonal();
  return out;
}

GaussianChannel GaussianChannel::identity(int n_modes) {
  GaussianChannel c;
  c.X = MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  c.Y = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  c.shift = VectorXd::Zero(2 * n_modes);
  return c;
}

GaussianChannel GaussianChannel::attenuation(double eta, int n_modes) {
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("attenuation: eta must be in [0,1]");
  GaussianChannel c = identity(n_modes);
  c.X *= std::sqrt(eta);
  // Replaced fraction of each mode is refilled with vacuum (ordinary moments).
  c.Y = 0.5 * (1.0 - eta) * MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  return c;
}

GaussianChannel GaussianChannel::rotation(double theta, int n_modes) {
  GaussianChannel c = identity(n_modes);
  // Heisenberg action of exp(-i theta n): q -> cos q + sin p, p -> -sin q + cos p.
  const double ct = std::cos(theta), st = std::sin(theta);
  for (int m = 0; m < n_modes; ++m) {
    c.X(2 * m, 2 * m) = ct;
    c.X(2 * m, 2 * m + 1) = st;
    c.X(2 * m + 1, 2 * m) = -st;
    c.X(2 * m + 1, 2 * m + 1) = ct;
  }
  return c;
}

GaussianChannel GaussianChannel::displacement(const VectorXd& shift) {
  if (shift.size() % 2 != 0 || shift.size() == 0)
    throw std::invalid_argument("displacement: shift must have even positive length");
  GaussianChannel c = identity(static_cast<int>(shift.size() / 2));
  c.shift = shift;
  return c;
}

bool GaussianChannel::is_completely_positive() const {
  const int n = static_cast<int>(X.rows() / 2);
  const MatrixXd omega = symplectic_form(n);
  MatrixXcd m = Y.cast<Scalar>() +
                Scalar(0, 0.5) * omega.cast<Scalar>() -
                Scalar(0, 0.5) * (X * omega * X.transpose()).cast<Scalar>();
  return min_eigenvalue(m) >= kPhysTol;
}

GaussianState apply_channel(const GaussianState& g, const GaussianChannel& c) {
  validate_state(g);
  if (c.X.rows() != g.cov.rows() || c.X.cols() != g.cov.cols() ||
      c.Y.rows() != g.cov.rows() || c.shift.size() != g.mean.size())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  GaussianState out;
  out.n_modes = g.n_modes;
  out.mean = c.X * g.mean + c.shift;
  out.cov = c.X * g.cov * c.X.transpose() + 2.0 * c.Y;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  // Identity/rotation channels preserve the reference family tags that the
  // Fock embedding understands; anything else invalidates them.
  if (g.kind && c.shift.isZero(0.0) && c.Y.isZero(0.0) &&
      (c.X - MatrixXd::Identity(c.X.rows(), c.X.cols())).isZero(0.0)) {
    out.kind = g.kind;
    out.kind_params = g.kind_params;
  }
  return out;
}

}  // namespace chronoscv::gauss
