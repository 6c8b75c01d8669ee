#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library code paths they check.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chronoscv/trajectory.hpp"

namespace oracles {

using chronoscv::MatrixXcd;
using chronoscv::MatrixXd;
using chronoscv::Scalar;
using chronoscv::VectorXcd;

// Two-time covariance of a vacuum chain with identity evolution: every
// same-quadrature pair correlates at full strength (rows q1,p1,q2,p2).
inline MatrixXd vacuum_two_time_cov() {
  MatrixXd s(4, 4);
  s << 1, 0, 1, 0,
       0, 1, 0, 1,
       1, 0, 1, 0,
       0, 1, 0, 1;
  return s;
}

// Thermal chain at squeezing-equivalent scale cosh(2r): the temporal analog
// of the two-mode squeezed state below.
inline MatrixXd thermal_two_time_cov(double r) {
  return std::cosh(2.0 * r) * vacuum_two_time_cov();
}

inline MatrixXd two_mode_squeezed_cov(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  MatrixXd m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return m;
}

// Poisson photon statistics of a displaced vacuum.
inline double displaced_vacuum_number_prob(std::complex<double> alpha, int n) {
  const double x = std::norm(alpha);
  double logp = -x + n * std::log(x) - std::lgamma(n + 1.0);
  if (n == 0) logp = -x;
  return std::exp(logp);
}

// Discretized path-integral reference: the gap propagator is replaced by the
// composition of `slices` short-time kernels, i.e. an explicit sum over
// intermediate positions on the spatial lattice.
inline double path_lattice_probability(const chronoscv::traj::TrajectoryConfig& cfg,
                                       const std::vector<double>& outcomes, int slices) {
  using namespace chronoscv::traj;
  const auto x = cfg.grid.points();
  VectorXcd psi = cfg.psi0;
  double prev = 0.0;
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    const double dt = cfg.times[i] - prev;
    if (dt > 0.0) {
      const MatrixXcd k = propagator_matrix(cfg.hamiltonian, dt / slices, cfg.grid);
      for (int s = 0; s < slices; ++s) psi = k * psi;
    }
    prev = cfg.times[i];
    for (int j = 0; j < cfg.grid.n; ++j) {
      psi(j) *= resolution_amplitude(outcomes[i] - x(j), cfg.eps);
    }
  }
  const double nrm = wave_norm(psi, cfg.grid);
  return nrm * nrm;
}

}  // namespace oracles
