#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chronoscv/schedule.hpp"
#include "chronoscv/temporal_gaussian.hpp"

namespace chronoscv::tomo {

using chronoscv::MatrixXd;
using chronoscv::VectorXd;

/// Synthesized homodyne outcomes: one row per shot, one column per event.
/// Reproducible given (seed, schedule, quads, eps); the RNG stream is split
/// per event column so batch-parallel generation stays deterministic.
struct HomodyneRecord {
  gauss::EventSchedule schedule;
  std::vector<gauss::Quadrature> quads;
  MatrixXd samples;
  std::uint64_t seed = 0;
  double eps = 0.05;
  // Mixed-protocol records read every event at one time; the stored schedule
  // slots are then nominal bookkeeping only.
  bool simultaneous = false;
};

/// Per-column standard normal matrix via an explicit Box-Muller transform
/// over mt19937_64 streams (one stream per column), so results are identical
/// across platforms and across batch orderings.
MatrixXd normal_columns(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Sequentially samples each event from its regularized outcome distribution,
/// collapsing and evolving between events.
HomodyneRecord simulate_records(const gauss::EventSchedule& schedule,
                                const std::vector<gauss::Quadrature>& quads, int shots, double eps,
                                std::uint64_t seed);

struct GaussianEstimate {
  VectorXd mean;
  VectorXd mean_se;
  MatrixXd sigma;     // doubled-convention covariance, diagonal corrected by -2 eps^2
  MatrixXd sigma_se;  // batch-means standard errors
  int batches = 0;
};

/// Plug-in moment estimators with the measurement-noise inflation removed
/// from the diagonal; standard errors from batch means. Needs >= 30 shots.
GaussianEstimate estimate_spacetime_gaussian(const HomodyneRecord& record);

enum class NoiseModel { kIdeal, kEightPort };

/// Same-time multi-quadrature protocol: every listed event is read out
/// simultaneously. The ideal branch draws from the symmetric-ordered joint
/// Gaussian; the eight-port branch splits the signal against vacuum, adding
/// one covariance unit per diagonal entry, which the estimate subtracts back
/// out (documented correction).
struct MixedProtocolResult {
  HomodyneRecord record;
  GaussianEstimate estimate;
};

MixedProtocolResult mixed_quadrature_protocol(const gauss::GaussianState& state,
                                              const std::vector<std::pair<int, gauss::Quadrature>>& events,
                                              int shots, double eps, NoiseModel noise,
                                              std::uint64_t seed);

/// Least-squares slope of log10(error) vs log10(shots) for the Frobenius
/// deviation of the estimate from target, averaged over seeds per point.
double error_scaling_slope(const gauss::EventSchedule& schedule,
                           const std::vector<gauss::Quadrature>& quads,
                           const MatrixXd& target_sigma, const std::vector<int>& shot_counts,
                           double eps, const std::vector<std::uint64_t>& seeds);

}  // namespace chronoscv::tomo
