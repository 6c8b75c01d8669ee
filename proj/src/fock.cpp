#include "chronoscv/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace chronoscv::fock {

namespace {
void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("fock: dim must be at least 2");
}
}  // namespace

MatrixXcd annihilation(int dim) {
  check_dim(dim);
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

MatrixXcd creation(int dim) { return annihilation(dim).adjoint(); }

MatrixXcd number_op(int dim) {
  check_dim(dim);
  MatrixXcd n = MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

MatrixXcd position_op(int dim) {
  const MatrixXcd a = annihilation(dim);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

MatrixXcd momentum_op(int dim) {
  const MatrixXcd a = annihilation(dim);
  return Scalar(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
}

MatrixXcd displacement(Scalar xi, int dim) {
  check_dim(dim);
  // Exact continuum matrix elements <m|D(xi)|n>, column by column: column 0
  // is the coherent amplitude vector and ladder conjugation D a^dag =
  // (a^dag - conj(xi)) D raises the column index. This is the projection of
  // the true unitary, so columns whose displaced support crosses the cutoff
  // come out subnormalized instead of reflecting off the truncation wall.
  MatrixXcd d(dim, dim);
  const double pref = std::exp(-0.5 * std::norm(xi));
  d(0, 0) = pref;
  for (int m = 1; m < dim; ++m) d(m, 0) = d(m - 1, 0) * xi / std::sqrt(double(m));
  for (int n = 0; n + 1 < dim; ++n) {
    d(0, n + 1) = -std::conj(xi) * d(0, n) / std::sqrt(double(n + 1));
    for (int m = 1; m < dim; ++m)
      d(m, n + 1) =
          (std::sqrt(double(m)) * d(m - 1, n) - std::conj(xi) * d(m, n)) / std::sqrt(double(n + 1));
  }
  return d;
}

bool displacement_safe(Scalar xi, int dim) {
  return std::norm(xi) <= static_cast<double>(dim) / 4.0;
}

MatrixXcd parity_op(int dim) {
  check_dim(dim);
  MatrixXcd p = MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

MatrixXcd t_operator(Scalar alpha, int dim) {
  // D(a) P D(a)^dag = D(2a) P collapses the conjugation into one exact
  // displacement block, so no intermediate operator-product truncation
  // enters; the result is Hermitian elementwise.
  MatrixXcd t = 2.0 * displacement(2.0 * alpha, dim);
  for (int n = 1; n < dim; n += 2) t.col(n) *= -1.0;
  return 0.5 * (t + MatrixXcd(t.adjoint()));
}

std::pair<MatrixXcd, MatrixXcd> parity_projectors(Scalar alpha, int dim) {
  // (2 I +- T)/4: complementary by construction, and the branch difference
  // 2(Pe rho Pe - Po rho Po) = (T rho + rho T)/2 holds exactly whatever the
  // truncation does to T^2.
  const MatrixXcd t = t_operator(alpha, dim);
  const MatrixXcd pe = 0.25 * (2.0 * MatrixXcd::Identity(dim, dim) + t);
  const MatrixXcd po = MatrixXcd::Identity(dim, dim) - pe;
  return {pe, po};
}

VectorXcd coherent_state(Scalar alpha, int dim) {
  check_dim(dim);
  VectorXcd v(dim);
  Scalar amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    v(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v / v.norm();
}

MatrixXcd thermal_state(double nbar, int dim) {
  check_dim(dim);
  if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
  MatrixXcd rho = MatrixXcd::Zero(dim, dim);
  if (nbar == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  const double ratio = nbar / (nbar + 1.0);
  double w = 1.0 / (nbar + 1.0), sum = 0.0;
  for (int n = 0; n < dim; ++n) {
    rho(n, n) = w;
    sum += w;
    w *= ratio;
  }
  return rho / sum;
}

VectorXcd two_mode_squeezed_vacuum(double r, int dim) {
  check_dim(dim);
  VectorXcd v = VectorXcd::Zero(dim * dim);
  const double th = std::tanh(r);
  double amp = 1.0;
  for (int n = 0; n < dim; ++n) {
    v(n * dim + n) = amp;
    amp *= th;
  }
  return v / v.norm();
}

FockState gaussian_to_fock(const gauss::GaussianState& g, int dim) {
  gauss::validate_state(g);
  check_dim(dim);
  using gauss::ReferenceKind;
  FockState out;
  out.dim = dim;
  out.n_modes = g.n_modes;

  auto from_kind = [&](ReferenceKind k, const std::vector<double>& p) {
    switch (k) {
      case ReferenceKind::kVacuum: {
        VectorXcd v = VectorXcd::Zero(dim);
        v(0) = 1.0;
        out.rho = v * v.adjoint();
        return;
      }
      case ReferenceKind::kCoherent: {
        const VectorXcd v = coherent_state(Scalar(p.at(0), p.at(1)), dim);
        out.rho = v * v.adjoint();
        return;
      }
      case ReferenceKind::kThermal: {
        out.rho = thermal_state(p.at(0), dim);
        return;
      }
      case ReferenceKind::kTmss: {
        const VectorXcd v = two_mode_squeezed_vacuum(p.at(0), dim);
        out.rho = v * v.adjoint();
        return;
      }
    }
  };

  if (g.kind) {
    from_kind(*g.kind, g.kind_params);
    return out;
  }
  // Structural fallback for single-mode members of the supported families.
  if (g.n_modes == 1) {
    const MatrixXd eye = MatrixXd::Identity(2, 2);
    if ((g.cov - eye).cwiseAbs().maxCoeff() < 1e-12) {
      if (g.mean.cwiseAbs().maxCoeff() < 1e-12) {
        from_kind(ReferenceKind::kVacuum, {});
      } else {
        from_kind(ReferenceKind::kCoherent,
                  {g.mean(0) / std::sqrt(2.0), g.mean(1) / std::sqrt(2.0)});
      }
      return out;
    }
    const double c = g.cov(0, 0);
    if ((g.cov - c * eye).cwiseAbs().maxCoeff() < 1e-12 && c >= 1.0 &&
        g.mean.cwiseAbs().maxCoeff() < 1e-12) {
      from_kind(ReferenceKind::kThermal, {(c - 1.0) / 2.0});
      return out;
    }
  }
  throw std::invalid_argument(
      "gaussian_to_fock: only vacuum/coherent/thermal/tmss reference states are embeddable");
}

MatrixXcd apply_kraus(const MatrixXcd& rho, const std::vector<MatrixXcd>& kraus,
                      bool allow_subnormalized) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty Kraus set");
  const Eigen::Index d = rho.rows();
  MatrixXcd sum = MatrixXcd::Zero(d, d);
  MatrixXcd out = MatrixXcd::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("apply_kraus: Kraus dimension mismatch");
    out += k * rho * k.adjoint();
    sum += k.adjoint() * k;
  }
  if (!allow_subnormalized &&
      max_abs(MatrixXcd(sum - MatrixXcd::Identity(d, d))) > 1e-8)
    throw std::invalid_argument("apply_kraus: Kraus set is not trace preserving");
  return out;
}

std::vector<MatrixXcd> identity_kraus(int dim) {
  check_dim(dim);
  return {MatrixXcd::Identity(dim, dim)};
}

std::vector<MatrixXcd> attenuation_kraus(double eta, int dim) {
  check_dim(dim);
  if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("attenuation_kraus: eta in [0,1]");
  // A_k = sum_n sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k><n|; binomial
  // completeness makes the set exactly trace preserving at any truncation.
  std::vector<MatrixXcd> ks;
  for (int k = 0; k < dim; ++k) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    bool nonzero = false;
    for (int n = k; n < dim; ++n) {
      const double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      double amp2;
      if (eta == 0.0) {
        amp2 = (n == k) ? 1.0 : 0.0;
      } else if (eta == 1.0) {
        amp2 = (k == 0) ? 1.0 : 0.0;
      } else {
        amp2 = std::exp(logc + (n - k) * std::log(eta) + k * std::log(1.0 - eta));
      }
      if (amp2 > 0.0) {
        a(n - k, n) = std::sqrt(amp2);
        nonzero = true;
      }
    }
    if (nonzero) ks.push_back(a);
  }
  return ks;
}

std::vector<MatrixXcd> rotation_kraus(double theta, int dim) {
  check_dim(dim);
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) u(n, n) = std::exp(Scalar(0, -theta * n));
  return {u};
}

double expectation(const MatrixXcd& op, const MatrixXcd& rho) {
  const Scalar tr = (op * rho).trace();
  return tr.real();
}

MatrixXcd hermitian_exp(const MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (h + h.adjoint()));
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace chronoscv::fock
