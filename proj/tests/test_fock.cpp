// Truncated-oscillator backend: ladder algebra, displaced parity operators
// and their product law, reference-state embeddings, and Kraus channels that
// must agree with the Gaussian moment maps.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "chronoscv/fock.hpp"
#include "oracles.hpp"

using namespace chronoscv;
using fock::FockState;
using fock::Scalar;

namespace {

double max_abs_cd(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("ladder operators satisfy the truncated commutation relations") {
  const int dim = 24;
  const MatrixXcd a = fock::annihilation(dim);
  const MatrixXcd ad = fock::creation(dim);
  const MatrixXcd comm = a * ad - ad * a;
  // Truncation only corrupts the corner entry.
  CHECK(max_abs_cd(comm.topLeftCorner(dim - 1, dim - 1) - MatrixXcd::Identity(dim - 1, dim - 1)) <
        1e-13);
  CHECK(std::abs(comm(dim - 1, dim - 1) - Scalar(1.0 - dim, 0.0)) < 1e-12);
  CHECK(max_abs_cd(ad * a - fock::number_op(dim)) < 1e-13);

  const MatrixXcd q = fock::position_op(dim);
  const MatrixXcd p = fock::momentum_op(dim);
  const MatrixXcd qp = q * p - p * q;
  CHECK(max_abs_cd(qp.topLeftCorner(dim - 1, dim - 1) -
                   Scalar(0, 1) * MatrixXcd::Identity(dim - 1, dim - 1)) < 1e-13);
}

TEST_CASE("coherent amplitudes carry the Poisson number distribution") {
  const int dim = 40;
  const Scalar alpha(0.8, -0.5);
  const VectorXcd psi = fock::coherent_state(alpha, dim);
  CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-12);
  for (int n = 0; n < 12; ++n)
    CHECK(std::norm(psi(n)) ==
          doctest::Approx(oracles::displaced_vacuum_number_prob(std::abs(alpha), n)).epsilon(1e-10));
  // Approximate annihilation eigenstate away from the truncation edge.
  const VectorXcd resid = (fock::annihilation(dim) * psi - alpha * psi).head(dim - 1);
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacement has exact elements and is unitary away from the cutoff") {
  const int dim = 40;
  const Scalar xi(0.7, 0.4);
  const MatrixXcd d = fock::displacement(xi, dim);
  // Unitary on the displacement-safe block; columns near the cutoff lose the
  // mass that crossed it and come out subnormalized, never supernormalized.
  const int blk = 20;
  CHECK(max_abs_cd((d.adjoint() * d).topLeftCorner(blk, blk) -
                   MatrixXcd::Identity(blk, blk)) < 1e-12);
  for (int n = 0; n < dim; ++n) CHECK(d.col(n).norm() <= 1.0 + 1e-12);
  CHECK(d.col(dim - 1).norm() < 0.9);  // top column straddles the cutoff
  // Elementwise agreement with a far-cutoff reference block.
  const MatrixXcd ref = fock::displacement(xi, 3 * dim).topLeftCorner(dim, dim);
  CHECK(max_abs_cd(d - ref) < 1e-13);
  VectorXcd vac = VectorXcd::Zero(dim);
  vac(0) = 1.0;
  CHECK((d * vac - fock::coherent_state(xi, dim)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(fock::displacement_safe(xi, dim));
  CHECK_FALSE(fock::displacement_safe(Scalar(4.0, 0.0), dim));
}

TEST_CASE("thermal state is geometric and reproduces its occupation") {
  const int dim = 60;
  const double nbar = 1.3;
  const MatrixXcd rho = fock::thermal_state(nbar, dim);
  CHECK(std::abs(rho.trace() - Scalar(1, 0)) < 1e-12);
  const double ratio = nbar / (nbar + 1.0);
  for (int n = 0; n + 1 < 10; ++n)
    CHECK(std::abs(rho(n + 1, n + 1) / rho(n, n) - ratio) < 1e-10);
  CHECK(fock::expectation(fock::number_op(dim), rho) == doctest::Approx(nbar).epsilon(1e-6));
}

TEST_CASE("two-mode squeezed amplitudes live on the diagonal with tanh weights") {
  const int dim = 24;
  const double r = 0.6;
  const VectorXcd psi = fock::two_mode_squeezed_vacuum(r, dim);
  REQUIRE(psi.size() == dim * dim);
  const double th = std::tanh(r);
  for (int n = 0; n < 8; ++n) {
    CHECK(std::abs(psi(n * dim + n).real() - std::pow(th, n) / std::cosh(r)) < 1e-10);
  }
  for (int n = 0; n < 6; ++n) CHECK(std::abs(psi(n * dim + n + 1)) < 1e-13);
  // Tracing out the partner leaves a thermal state of occupation sinh^2 r.
  const double nb = std::sinh(r) * std::sinh(r);
  for (int n = 0; n < 8; ++n) {
    const double p_red = std::norm(psi(n * dim + n));
    const double p_th = std::pow(nb / (nb + 1), n) / (nb + 1);
    CHECK(p_red == doctest::Approx(p_th).epsilon(1e-8));
  }
}

TEST_CASE("displaced parity is Hermitian, involutive up to scale, and projector-split") {
  const int dim = 36;
  const int blk = 12;  // displacement-safe block for these probe amplitudes
  const Scalar alpha(0.45, -0.3);
  const MatrixXcd t = fock::t_operator(alpha, dim);
  CHECK(max_abs_cd(t - t.adjoint()) < 1e-12);
  CHECK(max_abs_cd((t * t).topLeftCorner(blk, blk) -
                   4.0 * MatrixXcd::Identity(blk, blk)) < 1e-10);
  CHECK(max_abs_cd(fock::t_operator(Scalar(0, 0), dim) - 2.0 * fock::parity_op(dim)) < 1e-13);

  const auto [pe, po] = fock::parity_projectors(alpha, dim);
  CHECK(max_abs_cd(pe + po - MatrixXcd::Identity(dim, dim)) < 1e-14);
  CHECK(max_abs_cd((pe * pe - pe).topLeftCorner(blk, blk)) < 1e-10);
  CHECK(max_abs_cd((pe * po).topLeftCorner(blk, blk)) < 1e-10);
  CHECK(max_abs_cd(2.0 * (pe - po) - t) < 1e-13);
}

TEST_CASE("displaced parity products collapse to a phase times a displacement") {
  const int dim = 40;
  const int block = 10;
  const Scalar probes[4] = {{0.3, 0.2}, {-0.4, 0.1}, {0.0, -0.5}, {0.25, 0.35}};
  for (const Scalar& alpha : probes) {
    for (const Scalar& beta : probes) {
      const MatrixXcd lhs = fock::t_operator(alpha, dim) * fock::t_operator(beta, dim);
      const Scalar phase =
          std::exp(2.0 * (std::conj(alpha) * beta - alpha * std::conj(beta)));
      const MatrixXcd rhs = 4.0 * phase * fock::displacement(2.0 * (alpha - beta), dim);
      CHECK(max_abs_cd((lhs - rhs).topLeftCorner(block, block)) < 1e-8);
    }
  }
}

TEST_CASE("vacuum displaced-parity expectation is the Gaussian envelope") {
  const int dim = 40;
  VectorXcd vac = VectorXcd::Zero(dim);
  vac(0) = 1.0;
  const MatrixXcd rho = vac * vac.adjoint();
  for (double re : {0.0, 0.4, -0.7}) {
    for (double im : {0.0, 0.5}) {
      const Scalar alpha(re, im);
      const double got = fock::expectation(fock::t_operator(alpha, dim), rho);
      CHECK(got == doctest::Approx(2.0 * std::exp(-2.0 * std::norm(alpha))).epsilon(1e-9));
    }
  }
}

TEST_CASE("displaced-parity expectation equals the Gaussian Wigner function") {
  // W(q, p) = Tr[rho T(alpha)] / (2 pi) with alpha = (q + i p)/sqrt(2): the
  // two routes must agree for a coherent state.
  const int dim = 45;
  const auto g = gauss::make_reference_state(gauss::ReferenceKind::kCoherent, {0.4, -0.3});
  const auto f = fock::gaussian_to_fock(g, dim);
  for (double qv : {0.0, 0.6, -0.9}) {
    for (double pv : {0.2, -0.5}) {
      const Scalar alpha((qv + Scalar(0, 1) * pv) / std::sqrt(2.0));
      const double via_t = fock::expectation(fock::t_operator(alpha, dim), f.rho) / (2 * M_PI);
      VectorXd x(2);
      x << qv, pv;
      CHECK(via_t == doctest::Approx(gauss::wigner(g, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Kraus attenuation tracks the Gaussian channel moment map") {
  const int dim = 40;
  const double eta = 0.6;
  const auto g = gauss::make_reference_state(gauss::ReferenceKind::kCoherent, {0.9, 0.4});
  const auto f = fock::gaussian_to_fock(g, dim);
  const MatrixXcd rho2 = fock::apply_kraus(f.rho, fock::attenuation_kraus(eta, dim));
  CHECK(std::abs(rho2.trace() - Scalar(1, 0)) < 1e-10);

  const auto g2 = gauss::apply_channel(g, gauss::GaussianChannel::attenuation(eta, 1));
  CHECK(fock::expectation(fock::position_op(dim), rho2) ==
        doctest::Approx(g2.mean(0)).epsilon(1e-8));
  CHECK(fock::expectation(fock::momentum_op(dim), rho2) ==
        doctest::Approx(g2.mean(1)).epsilon(1e-8));
  // Attenuated coherent state stays pure and coherent.
  const VectorXcd target = fock::coherent_state(std::sqrt(eta) * Scalar(0.9, 0.4), dim);
  CHECK(std::abs((target.adjoint() * rho2 * target).value().real() - 1.0) < 1e-8);

  // Thermal occupation scales by eta.
  const MatrixXcd th2 = fock::apply_kraus(fock::thermal_state(0.8, dim),
                                          fock::attenuation_kraus(eta, dim));
  CHECK(fock::expectation(fock::number_op(dim), th2) ==
        doctest::Approx(eta * 0.8).epsilon(1e-6));
}

TEST_CASE("Kraus rotation matches the symplectic rotation on first moments") {
  const int dim = 40;
  const double theta = 0.7;
  const auto g = gauss::make_reference_state(gauss::ReferenceKind::kCoherent, {0.8, -0.2});
  const auto f = fock::gaussian_to_fock(g, dim);
  const MatrixXcd rho2 = fock::apply_kraus(f.rho, fock::rotation_kraus(theta, dim));
  const auto g2 = gauss::apply_channel(g, gauss::GaussianChannel::rotation(theta, 1));
  CHECK(fock::expectation(fock::position_op(dim), rho2) ==
        doctest::Approx(g2.mean(0)).epsilon(1e-9));
  CHECK(fock::expectation(fock::momentum_op(dim), rho2) ==
        doctest::Approx(g2.mean(1)).epsilon(1e-9));
}

TEST_CASE("apply_kraus polices completeness") {
  const int dim = 12;
  const MatrixXcd rho = fock::thermal_state(0.5, dim);
  std::vector<MatrixXcd> bad = {0.5 * MatrixXcd::Identity(dim, dim)};
  CHECK_THROWS_AS(fock::apply_kraus(rho, bad), std::invalid_argument);
  const MatrixXcd sub = fock::apply_kraus(rho, bad, true);
  CHECK(std::abs(sub.trace() - Scalar(0.25, 0)) < 1e-12);
}

TEST_CASE("Gaussian embedding covers the reference families and recovers tags") {
  const int dim = 36;
  const auto vac = fock::gaussian_to_fock(gauss::make_reference_state(gauss::ReferenceKind::kVacuum, {}), dim);
  CHECK(std::abs(vac.rho(0, 0) - Scalar(1, 0)) < 1e-12);

  const auto tm = fock::gaussian_to_fock(gauss::make_reference_state(gauss::ReferenceKind::kTmss, {0.5}), dim);
  CHECK(tm.n_modes == 2);
  CHECK(std::abs(tm.rho.trace() - Scalar(1, 0)) < 1e-6);

  // Structural recovery when the provenance tag is stripped.
  auto coh = gauss::make_reference_state(gauss::ReferenceKind::kCoherent, {0.3, 0.6});
  auto tagged = fock::gaussian_to_fock(coh, dim);
  coh.kind.reset();
  coh.kind_params.clear();
  auto recovered = fock::gaussian_to_fock(coh, dim);
  CHECK(max_abs_cd(tagged.rho - recovered.rho) < 1e-9);

  // A squeezed covariance is outside the supported families.
  gauss::GaussianState sq;
  sq.n_modes = 1;
  sq.mean = VectorXd::Zero(2);
  sq.cov = (MatrixXd(2, 2) << 0.5, 0.0, 0.0, 2.0).finished();
  CHECK_THROWS_AS(fock::gaussian_to_fock(sq, dim), std::invalid_argument);
}

TEST_CASE("hermitian_exp matches scalar exponentials on eigenvectors") {
  const int dim = 18;
  const MatrixXcd n = fock::number_op(dim);
  const MatrixXcd e = fock::hermitian_exp(-0.3 * n);
  for (int k = 0; k < dim; ++k)
    CHECK(std::abs(e(k, k) - std::exp(-0.3 * k)) < 1e-12);
  const MatrixXcd q = fock::position_op(dim);
  const MatrixXcd g = fock::hermitian_exp(-0.5 * q * q);
  CHECK(max_abs_cd(g - g.adjoint()) < 1e-12);
  // exp(-q^2/2) has unit vacuum overlap factor <0|e^{-q^2/2}|0> = 1/2^(1/4)
  // only in the continuum; here just pin positivity and norm decay.
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("kron composes operators mode by mode") {
  const int dim = 6;
  const MatrixXcd a = fock::annihilation(dim);
  const MatrixXcd id = MatrixXcd::Identity(dim, dim);
  const MatrixXcd lhs = fock::kron(a, id) * fock::kron(id, a);
  const MatrixXcd rhs = fock::kron(a, a);
  CHECK(max_abs_cd(lhs - rhs) < 1e-13);
}
