#include "chronoscv/weak_measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace chronoscv::weak {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Unnormalized Kraus exp[-(s/2)((qhat-q)^2 + lambda(phat-p)^2)]; two of them
// sandwiching rho give the POVM weight of an integrated strength s.
MatrixXcd half_kraus(double q, double p, double strength, double lambda, int dim) {
  const MatrixXcd qh = fock::position_op(dim);
  const MatrixXcd ph = fock::momentum_op(dim);
  const MatrixXcd dq = qh - q * MatrixXcd::Identity(dim, dim);
  const MatrixXcd dp = ph - p * MatrixXcd::Identity(dim, dim);
  const MatrixXcd form = dq * dq + lambda * (dp * dp);
  return fock::hermitian_exp((-0.5 * strength) * form);
}

}  // namespace

MatrixXcd weak_povm_density(double q, double p, double strength, double lambda, int dim) {
  if (!(strength > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("strength and lambda must be positive");
  }
  const double c = std::sinh(strength * std::sqrt(lambda)) / kPi;
  const MatrixXcd k = half_kraus(q, p, strength, lambda, dim);
  return c * (k * k);
}

double completeness_residual(double strength, double lambda, int dim, double radius, double step,
                             int block) {
  if (block > dim) throw std::invalid_argument("diagnostic block exceeds truncation");
  MatrixXcd acc = MatrixXcd::Zero(dim, dim);
  const int half = static_cast<int>(std::lround(radius / step));
  for (int iq = -half; iq <= half; ++iq) {
    for (int ip = -half; ip <= half; ++ip) {
      acc += weak_povm_density(iq * step, ip * step, strength, lambda, dim);
    }
  }
  acc *= step * step;
  acc -= MatrixXcd::Identity(dim, dim);
  return acc.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

void validate_chain(const WeakChainConfig& cfg, int n_probes) {
  if (!(cfg.gamma > 0.0) || !(cfg.strength0 > 0.0) || !(cfg.lambda > 0.0)) {
    throw std::invalid_argument("weak chain rates must be positive");
  }
  if (cfg.slices < 1) throw std::invalid_argument("need at least one slice per interval");
  if (cfg.times.empty() || cfg.times.front() != 0.0) {
    throw std::invalid_argument("weak chain must start with an event at t = 0");
  }
  for (std::size_t i = 1; i < cfg.times.size(); ++i) {
    if (!(cfg.times[i] > cfg.times[i - 1])) {
      throw std::invalid_argument("event times must be strictly increasing");
    }
  }
  if (n_probes != static_cast<int>(cfg.times.size())) {
    throw std::invalid_argument("one (q,p) probe per event required");
  }
}

double weak_record_density(const fock::FockState& rho, const WeakChainConfig& cfg,
                           const std::vector<std::pair<double, double>>& probes) {
  validate_chain(cfg, static_cast<int>(probes.size()));
  if (rho.n_modes != 1) throw std::invalid_argument("weak chains act on a single mode");
  const int dim = rho.dim;

  // Instantaneous first record.
  MatrixXcd m = half_kraus(probes[0].first, probes[0].second, cfg.strength0, cfg.lambda, dim);
  double norm = std::sinh(cfg.strength0 * std::sqrt(cfg.lambda)) / kPi;

  for (std::size_t i = 1; i < cfg.times.size(); ++i) {
    const double tau = cfg.times[i] - cfg.times[i - 1];
    const double ds = cfg.gamma * tau / cfg.slices;
    const MatrixXcd slice =
        half_kraus(probes[i].first, probes[i].second, ds, cfg.lambda, dim);
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    if (cfg.harmonic) {
      const double dt = tau / cfg.slices;
      VectorXcd ph(dim);
      for (int n = 0; n < dim; ++n) {
        ph(n) = std::exp(Scalar(0.0, -cfg.omega * (n + 0.5) * dt));
      }
      u = ph.asDiagonal();
    }
    for (int s = 0; s < cfg.slices; ++s) m = slice * u * m;
    norm *= std::sinh(cfg.gamma * tau * std::sqrt(cfg.lambda)) / kPi;
  }

  const double w = norm * (m * rho.rho * m.adjoint()).trace().real();
  return w;
}

double spacelike_record_density(const std::vector<fock::FockState>& factors,
                                const std::vector<std::pair<double, double>>& probes,
                                double strength, double lambda) {
  if (factors.size() != probes.size() || factors.empty()) {
    throw std::invalid_argument("one probe per mode required");
  }
  double w = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.n_modes != 1) throw std::invalid_argument("factors must be single-mode states");
    const MatrixXcd povm = weak_povm_density(probes[i].first, probes[i].second, strength, lambda, f.dim);
    w *= (povm * f.rho).trace().real();
  }
  return w;
}

}  // namespace chronoscv::weak
