#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "chronoscv/fock.hpp"
#include "chronoscv/schedule.hpp"
#include "chronoscv/temporal_gaussian.hpp"

namespace chronoscv::crit {

/// One row of the desiderata table: Hermitian form, normalization, mixing
/// linearity, Heisenberg expectations, propagator correctness, classical
/// limit.
struct CriterionResult {
  int id = 0;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct CriteriaConfig {
  gauss::EventSchedule schedule;  // two-event single-mode instance
  int fock_dim = 30;              // truncation of the independent readout oracle
  double oracle_step = 0.05;      // first-outcome grid spacing of that oracle
  bool tamper_symmetry = false;   // corrupt one covariance entry (failure demo)
};

/// Truncated-oscillator realization of a moment-preserving channel; supports
/// identity, attenuation, rotation and pure displacement maps.
std::vector<MatrixXcd> fock_kraus_for(const gauss::GaussianChannel& c, int dim);

/// Raw record moment E[v_a v_b] for measuring quad_a, applying the channel,
/// then measuring quad_b, simulated entirely in a truncated Fock space: the
/// first readout runs over an explicit outcome grid of Gaussian-instrument
/// Kraus updates, the second is read off as a posterior quadrature mean.
double fock_two_event_moment(const fock::FockState& rho, const gauss::GaussianChannel& channel,
                             const gauss::Quadrature& quad_a, const gauss::Quadrature& quad_b,
                             double eps, double step);

std::vector<CriterionResult> evaluate_criteria(const CriteriaConfig& cfg);

nlohmann::json criteria_table_json(const std::vector<CriterionResult>& rows);

}  // namespace chronoscv::crit
