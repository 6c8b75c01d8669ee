#pragma once

#include <utility>
#include <vector>

#include "chronoscv/fock.hpp"
#include "chronoscv/linalg.hpp"

namespace chronoscv::weak {

using chronoscv::MatrixXcd;
using chronoscv::Scalar;

/// Normalized phase-space POVM density
///   f(q,p) = C exp[-a((qhat-q)^2 + lambda(phat-p)^2)],  C = sinh(a sqrt(lambda))/pi,
/// tiled copies of which resolve the identity: integral f dq dp = I. The
/// normalization follows from the operator spectrum sqrt(lambda)(2n+1) of the
/// displaced quadratic form.
MatrixXcd weak_povm_density(double q, double p, double strength, double lambda, int dim);

/// Max-abs deviation of sum f(q,p) dq dp from the identity on the low Fock
/// block (truncation diagnostic for the continuum resolution of identity).
double completeness_residual(double strength, double lambda, int dim, double radius, double step,
                             int block);

struct WeakChainConfig {
  double gamma = 0.5;       // coupling rate per unit time for events after the first
  double strength0 = 0.5;   // integrated strength of the instantaneous first event
  double lambda = 1.0;      // momentum-to-position resolution ratio
  int slices = 8;           // Trotter slices per inter-event interval
  std::vector<double> times;  // event times, first one 0, strictly increasing
  bool harmonic = false;    // evolve with H = omega(n + 1/2) between records
  double omega = 1.0;
};

void validate_chain(const WeakChainConfig& cfg, int n_probes);

/// Record density for a chain of weak phase-space records: the first event is
/// an instantaneous Kraus of strength strength0, each later event interleaves
/// constant-record Kraus slices of strength gamma*dt/slices with unitary
/// steps. Output is the joint density at the probe points (q_i, p_i), which
/// is nonnegative by construction.
double weak_record_density(const fock::FockState& rho, const WeakChainConfig& cfg,
                           const std::vector<std::pair<double, double>>& probes);

/// Same-time records on independent modes: returns the joint density on the
/// product state. For product inputs this factorizes into single-mode record
/// densities (see weak_record_density with a single event).
double spacelike_record_density(const std::vector<fock::FockState>& factors,
                                const std::vector<std::pair<double, double>>& probes,
                                double strength, double lambda);

}  // namespace chronoscv::weak
