#include "chronoscv/tomography.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace chronoscv::tomo {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& g) {
  // (0,1) open interval, 53-bit resolution; never 0, safe under log.
  return (static_cast<double>(g() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Direction of the measured quadrature in the doubled phase-space ordering.
VectorXd quad_direction(int n_modes, int mode, const gauss::Quadrature& q) {
  VectorXd u = VectorXd::Zero(2 * n_modes);
  const double th = q.angle();
  u(2 * mode) = std::cos(th);
  u(2 * mode + 1) = std::sin(th);
  return u;
}

}  // namespace

MatrixXd normal_columns(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  MatrixXd z(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    std::mt19937_64 g(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(c + 1))));
    Eigen::Index r = 0;
    while (r < rows) {
      const double u1 = uniform01(g);
      const double u2 = uniform01(g);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      z(r++, c) = rad * std::cos(kTwoPi * u2);
      if (r < rows) z(r++, c) = rad * std::sin(kTwoPi * u2);
    }
  }
  return z;
}

HomodyneRecord simulate_records(const gauss::EventSchedule& schedule,
                                const std::vector<gauss::Quadrature>& quads, int shots, double eps,
                                std::uint64_t seed) {
  gauss::validate_schedule(schedule);
  const int n_ev = schedule.n_events();
  if (static_cast<int>(quads.size()) != n_ev) {
    throw std::invalid_argument("one quadrature per event required");
  }
  if (shots < 1) throw std::invalid_argument("need at least one shot");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

  HomodyneRecord rec;
  rec.schedule = schedule;
  rec.quads = quads;
  rec.seed = seed;
  rec.eps = eps;
  rec.samples.resize(shots, n_ev);

  const MatrixXd z = normal_columns(shots, n_ev, seed);
  const int nm = schedule.initial.n_modes;
  std::vector<VectorXd> dirs(n_ev);
  for (int e = 0; e < n_ev; ++e) dirs[e] = quad_direction(nm, schedule.events[e].mode, quads[e]);

  chronoscv::parallel_for(static_cast<std::size_t>(shots), [&](std::size_t m) {
    gauss::GaussianState state = schedule.initial;
    for (int e = 0; e < n_ev; ++e) {
      if (e > 0) {
        for (int s = schedule.events[e - 1].t; s < schedule.events[e].t; ++s) {
          state = gauss::apply_channel(state, schedule.channels[s]);
        }
      }
      const VectorXd& u = dirs[e];
      const double mu = u.dot(state.mean);
      const double var = 0.5 * u.dot(state.cov * u) + eps * eps;
      const double v = mu + std::sqrt(var) * z(static_cast<Eigen::Index>(m), e);
      rec.samples(static_cast<Eigen::Index>(m), e) = v;
      state = gauss::quadrature_collapse(state, schedule.events[e].mode, quads[e], v, eps).posterior;
    }
  });
  return rec;
}

GaussianEstimate estimate_spacetime_gaussian(const HomodyneRecord& record) {
  const Eigen::Index m = record.samples.rows();
  const Eigen::Index n = record.samples.cols();
  if (m < 30) throw std::invalid_argument("need at least 30 shots to estimate moments");

  const auto plugin = [&](Eigen::Index row0, Eigen::Index rows, VectorXd& mean_out) {
    const auto block = record.samples.middleRows(row0, rows);
    mean_out = block.colwise().mean().transpose();
    MatrixXd raw = (block.transpose() * block) / static_cast<double>(rows);
    MatrixXd sig = 2.0 * (raw - mean_out * mean_out.transpose());
    sig.diagonal().array() -= 2.0 * record.eps * record.eps;
    return sig;
  };

  GaussianEstimate est;
  est.sigma = plugin(0, m, est.mean);

  Eigen::Index batches = std::min<Eigen::Index>(50, m / 30);
  if (batches < 2) batches = 2;
  const Eigen::Index bsz = m / batches;
  MatrixXd sig_sq = MatrixXd::Zero(n, n);
  MatrixXd sig_mean = MatrixXd::Zero(n, n);
  VectorXd mu_sq = VectorXd::Zero(n);
  VectorXd mu_mean = VectorXd::Zero(n);
  for (Eigen::Index b = 0; b < batches; ++b) {
    VectorXd bm;
    const MatrixXd bs = plugin(b * bsz, bsz, bm);
    sig_mean += bs;
    sig_sq += bs.cwiseProduct(bs);
    mu_mean += bm;
    mu_sq += bm.cwiseProduct(bm);
  }
  const double nb = static_cast<double>(batches);
  sig_mean /= nb;
  mu_mean /= nb;
  est.sigma_se =
      ((sig_sq / nb - sig_mean.cwiseProduct(sig_mean)).cwiseMax(0.0) / (nb - 1.0)).cwiseSqrt();
  est.mean_se = ((mu_sq / nb - mu_mean.cwiseProduct(mu_mean)).cwiseMax(0.0) / (nb - 1.0)).cwiseSqrt();
  est.batches = static_cast<int>(batches);
  return est;
}

MixedProtocolResult mixed_quadrature_protocol(
    const gauss::GaussianState& state, const std::vector<std::pair<int, gauss::Quadrature>>& events,
    int shots, double eps, NoiseModel noise, std::uint64_t seed) {
  gauss::validate_state(state);
  if (events.empty()) throw std::invalid_argument("mixed protocol needs at least one event");
  if (shots < 30) throw std::invalid_argument("need at least 30 shots");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  for (const auto& [mode, q] : events) {
    (void)q;
    if (mode < 0 || mode >= state.n_modes) throw std::invalid_argument("event mode out of range");
  }

  const int k = static_cast<int>(events.size());
  VectorXd mu(k);
  MatrixXd cov(k, k);
  std::vector<VectorXd> dirs(k);
  for (int i = 0; i < k; ++i) dirs[i] = quad_direction(state.n_modes, events[i].first, events[i].second);
  for (int i = 0; i < k; ++i) {
    mu(i) = dirs[i].dot(state.mean);
    for (int j = 0; j < k; ++j) cov(i, j) = 0.5 * dirs[i].dot(state.cov * dirs[j]);
  }
  const double extra = (noise == NoiseModel::kEightPort) ? 0.5 : 0.0;
  cov.diagonal().array() += eps * eps + extra;

  const Eigen::LLT<MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("simultaneous readout covariance is not positive definite");
  }

  MixedProtocolResult out;
  out.record.simultaneous = true;
  out.record.seed = seed;
  out.record.eps = eps;
  out.record.quads.reserve(events.size());
  // Nominal bookkeeping schedule: distinct slots, identity gaps.
  out.record.schedule.initial = state;
  for (int i = 0; i < k; ++i) {
    out.record.schedule.events.push_back({i, events[i].first});
    out.record.quads.push_back(events[i].second);
    if (i + 1 < k) {
      out.record.schedule.channels.push_back(gauss::GaussianChannel::identity(state.n_modes));
    }
  }
  const MatrixXd z = normal_columns(shots, k, seed);
  out.record.samples = (z * llt.matrixL().transpose()).rowwise() + mu.transpose();

  out.estimate = estimate_spacetime_gaussian(out.record);
  if (noise == NoiseModel::kEightPort) {
    out.estimate.sigma.diagonal().array() -= 1.0;  // documented vacuum-share unit
  }
  return out;
}

double error_scaling_slope(const gauss::EventSchedule& schedule,
                           const std::vector<gauss::Quadrature>& quads,
                           const MatrixXd& target_sigma, const std::vector<int>& shot_counts,
                           double eps, const std::vector<std::uint64_t>& seeds) {
  if (shot_counts.size() < 2 || seeds.empty()) {
    throw std::invalid_argument("need at least two shot counts and one seed");
  }
  std::vector<double> xs, ys;
  for (int m : shot_counts) {
    double acc = 0.0;
    for (std::uint64_t s : seeds) {
      const auto rec = simulate_records(schedule, quads, m, eps, s);
      const auto est = estimate_spacetime_gaussian(rec);
      acc += std::log10((est.sigma - target_sigma).norm());
    }
    xs.push_back(std::log10(static_cast<double>(m)));
    ys.push_back(acc / static_cast<double>(seeds.size()));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace chronoscv::tomo
