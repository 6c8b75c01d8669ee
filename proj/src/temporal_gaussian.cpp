#include "chronoscv/temporal_gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace chronoscv::gauss {

namespace {

VectorXd quad_direction(int n_modes, int mode, const Quadrature& quad) {
  VectorXd u = VectorXd::Zero(2 * n_modes);
  u(2 * mode) = std::cos(quad.angle());
  u(2 * mode + 1) = std::sin(quad.angle());
  return u;
}

VectorXd conjugate_direction(int n_modes, int mode, const Quadrature& quad) {
  VectorXd c = VectorXd::Zero(2 * n_modes);
  c(2 * mode) = -std::sin(quad.angle());
  c(2 * mode + 1) = std::cos(quad.angle());
  return c;
}

struct Affine {
  MatrixXd X;
  VectorXd shift;
};

/// Composition of the gap channels mapping slot `from` to slot `to`.
Affine composed_map(const EventSchedule& s, int from, int to) {
  const int d = 2 * s.initial.n_modes;
  Affine a{MatrixXd::Identity(d, d), VectorXd::Zero(d)};
  for (int k = from; k < to; ++k) {
    a.X = s.channels[k].X * a.X;
    a.shift = s.channels[k].X * a.shift + s.channels[k].shift;
  }
  return a;
}

/// Neville tableau at eps^2 = 0; residual is the last diagonal increment.
std::pair<double, double> richardson(const std::vector<double>& eps,
                                     const std::vector<double>& vals) {
  const std::size_t n = vals.size();
  std::vector<double> x(n), t(vals);
  for (std::size_t i = 0; i < n; ++i) x[i] = eps[i] * eps[i];
  double prev = t[0];
  for (std::size_t k = 1; k < n; ++k) {
    prev = t[0];
    for (std::size_t i = 0; i + k < n; ++i)
      t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + k] / (x[i] - x[i + k]);
  }
  const double val = t[0];
  const double res = n > 1 ? std::abs(val - prev) : 0.0;
  return {val, res};
}

}  // namespace

GaussianState evolved_state(const EventSchedule& s, int slot) {
  GaussianState g = s.initial;
  for (int k = 0; k < slot; ++k) g = apply_channel(g, s.channels[k]);
  return g;
}

CollapseResult quadrature_collapse(const GaussianState& g, int mode, const Quadrature& quad,
                                   double outcome, double eps) {
  validate_state(g);
  if (mode < 0 || mode >= g.n_modes)
    throw std::invalid_argument("quadrature_collapse: mode out of range");
  if (!(eps > 0.0)) throw std::invalid_argument("quadrature_collapse: eps must be positive");
  const VectorXd u = quad_direction(g.n_modes, mode, quad);
  const VectorXd c = conjugate_direction(g.n_modes, mode, quad);
  const MatrixXd v = 0.5 * g.cov;  // ordinary moments
  const double s2 = u.dot(v * u) + eps * eps;
  const double mu = u.dot(g.mean);

  CollapseResult out;
  out.weight = std::exp(-0.5 * (outcome - mu) * (outcome - mu) / s2) / std::sqrt(2.0 * M_PI * s2);

  const VectorXd gain = (v * u) / s2;
  MatrixXd v_post = v - (v * u) * (u.transpose() * v) / s2;
  v_post += c * c.transpose() / (4.0 * eps * eps);
  out.posterior.n_modes = g.n_modes;
  out.posterior.mean = g.mean + gain * (outcome - mu);
  out.posterior.cov = v_post + v_post.transpose();  // back to doubled convention
  return out;
}

double two_event_correlation(const EventSchedule& s, int i, int j, const Quadrature& quad_i,
                             const Quadrature& quad_j, double eps) {
  validate_schedule(s);
  if (i < 0 || j < 0 || i >= s.n_events() || j >= s.n_events())
    throw std::invalid_argument("two_event_correlation: event index out of range");
  if (s.events[i].t > s.events[j].t) return two_event_correlation(s, j, i, quad_j, quad_i, eps);
  if (!(eps > 0.0)) throw std::invalid_argument("two_event_correlation: eps must be positive");

  const Event& ei = s.events[i];
  const Event& ej = s.events[j];
  const GaussianState at_i = evolved_state(s, ei.t);
  const int n = s.initial.n_modes;
  const VectorXd u = quad_direction(n, ei.mode, quad_i);
  const VectorXd w = quad_direction(n, ej.mode, quad_j);
  const MatrixXd v = 0.5 * at_i.cov;

  if (ei.t == ej.t) {
    // Simultaneous symmetric-ordered raw moment; no collapse enters.
    return u.dot(v * w) + u.dot(at_i.mean) * w.dot(at_i.mean);
  }

  // Collapse at the earlier event. The outcome-density variance cancels the
  // Kalman-gain denominator, so E[v (posterior mean)] = mu * mean + V u.
  const double mu = u.dot(at_i.mean);
  const VectorXd ev_v_mean = mu * at_i.mean + v * u;
  const Affine fwd = composed_map(s, ei.t, ej.t);
  return w.dot(fwd.X * ev_v_mean + fwd.shift * mu);
}

SpacetimeGaussian build_spacetime_gaussian(const EventSchedule& s) {
  validate_schedule(s);
  const int n = s.n_events();
  const int d = 2 * n;
  SpacetimeGaussian st;
  st.n_events = n;
  st.mean = VectorXd::Zero(d);
  st.cov = MatrixXd::Zero(d, d);
  st.residual = MatrixXd::Zero(d, d);

  std::vector<GaussianState> at(n);
  for (int a = 0; a < n; ++a) at[a] = evolved_state(s, s.events[a].t);
  const Quadrature quads[2] = {Quadrature::q(), Quadrature::p()};

  for (int a = 0; a < n; ++a)
    for (int qa = 0; qa < 2; ++qa)
      st.mean(2 * a + qa) = at[a].mean(2 * s.events[a].mode + qa);

  for (int a = 0; a < n; ++a) {
    // Single-event blocks are the evolved marginal's covariance block.
    const int m = s.events[a].mode;
    st.cov.block<2, 2>(2 * a, 2 * a) = at[a].cov.block<2, 2>(2 * m, 2 * m);
    for (int b = a + 1; b < n; ++b) {
      for (int qa = 0; qa < 2; ++qa) {
        for (int qb = 0; qb < 2; ++qb) {
          std::vector<double> vals;
          vals.reserve(s.eps.size());
          for (double eps : s.eps)
            vals.push_back(two_event_correlation(s, a, b, quads[qa], quads[qb], eps));
          const auto [raw, res] = richardson(s.eps, vals);
          const int ia = 2 * a + qa, ib = 2 * b + qb;
          st.cov(ia, ib) = 2.0 * raw - 2.0 * st.mean(ia) * st.mean(ib);
          st.cov(ib, ia) = st.cov(ia, ib);
          st.residual(ia, ib) = st.residual(ib, ia) = res;
        }
      }
    }
  }
  return st;
}

SpacetimeGaussian build_spacetime_gaussian_mixture(
    const std::vector<std::pair<double, GaussianState>>& components, const EventSchedule& base) {
  if (components.empty())
    throw std::invalid_argument("mixture: needs at least one component");
  double wsum = 0.0;
  for (const auto& [w, g] : components) {
    (void)g;
    if (w < 0.0) throw std::invalid_argument("mixture: weights must be >= 0");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights must sum to 1");

  SpacetimeGaussian out;
  bool first = true;
  VectorXd mean;
  MatrixXd raw;
  for (const auto& [w, g] : components) {
    EventSchedule s = base;
    s.initial = g;
    const SpacetimeGaussian st = build_spacetime_gaussian(s);
    const MatrixXd raw_k = 0.5 * st.cov + st.mean * st.mean.transpose();
    if (first) {
      out = st;
      mean = w * st.mean;
      raw = w * raw_k;
      first = false;
    } else {
      mean += w * st.mean;
      raw += w * raw_k;
      out.residual = out.residual.cwiseMax(st.residual);
    }
  }
  out.mean = mean;
  out.cov = 2.0 * (raw - mean * mean.transpose());
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

GaussianState reduced_event_state(const SpacetimeGaussian& st, int event) {
  if (event < 0 || event >= st.n_events)
    throw std::invalid_argument("reduced_event_state: event out of range");
  GaussianState g;
  g.n_modes = 1;
  g.mean = st.mean.segment<2>(2 * event);
  g.cov = st.cov.block<2, 2>(2 * event, 2 * event);
  return g;
}

double temporal_wigner(const SpacetimeGaussian& st, const VectorXd& x, double reg) {
  GaussianState g;
  g.n_modes = st.n_events;
  g.mean = st.mean;
  g.cov = st.cov;
  return wigner(g, x, reg);
}

}  // namespace chronoscv::gauss
