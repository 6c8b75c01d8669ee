#pragma once

#include <utility>
#include <vector>

#include "chronoscv/schedule.hpp"

namespace chronoscv::gauss {

struct CollapseResult {
  GaussianState posterior;
  double weight = 0.0;  // outcome density at the given value
};

/// Finite-resolution quadrature readout with Gaussian instrument
/// Upsilon_eps(v - x) = (2 pi eps^2)^{-1/4} exp(-(v - x)^2 / (4 eps^2)).
/// The posterior stays Gaussian: the measured direction is sharpened by a
/// product with an eps^2-variance Gaussian and the conjugate direction picks
/// up a 1/(4 eps^2) back-action variance (ordinary-moment units).
CollapseResult quadrature_collapse(const GaussianState& g, int mode, const Quadrature& quad,
                                   double outcome, double eps);

/// Raw product moment E[v_i v_j] of the records of events i and j (0-based
/// indices into schedule.events), measuring quad_i at the earlier event and
/// quad_j at the later one, at instrument resolution eps. Events sharing a
/// time slot use symmetric-ordered moments of the joint state instead of a
/// collapse. Correlations are pairwise: no other event intervenes.
double two_event_correlation(const EventSchedule& s, int i, int j, const Quadrature& quad_i,
                             const Quadrature& quad_j, double eps);

/// Measurement-defined Gaussian over N events: mean d_i = <x_i> and
/// cov_ij = 2 E[x_i x_j]_sym - 2 d_i d_j, rows ordered (q_1,p_1,...,q_N,p_N).
struct SpacetimeGaussian {
  int n_events = 0;
  VectorXd mean;
  MatrixXd cov;
  MatrixXd residual;  // per-entry sharp-limit extrapolation residual
};

/// Evaluates every entry on the schedule's eps ladder and Richardson
/// extrapolates in eps^2 to the sharp limit. Residuals must be inspected by
/// callers that need a trust bound; acceptance-grade runs demand < 1e-3.
SpacetimeGaussian build_spacetime_gaussian(const EventSchedule& s);

/// Moment-level convex combination: the records' first and raw second
/// moments are linear in the initial state, so a mixed input is built by
/// mixing the per-component moment sets.
SpacetimeGaussian build_spacetime_gaussian_mixture(
    const std::vector<std::pair<double, GaussianState>>& components, const EventSchedule& base);

/// 2x2 diagonal block of one event, as a single-mode state.
GaussianState reduced_event_state(const SpacetimeGaussian& st, int event);

/// Wigner form of the (generally unphysical) spacetime Gaussian; singular
/// covariances need reg > 0 exactly as gauss::wigner.
double temporal_wigner(const SpacetimeGaussian& st, const VectorXd& x, double reg = 0.0);

/// State after applying channels for slots [0, slot), with means.
GaussianState evolved_state(const EventSchedule& s, int slot);

}  // namespace chronoscv::gauss
