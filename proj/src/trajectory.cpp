#include "chronoscv/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chronoscv::traj {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCausticTol = 1e-9;

MatrixXcd identity_map(int n) { return MatrixXcd::Identity(n, n); }

// Reflection psi(x) -> psi(-x); valid only on a symmetric grid where the
// index flip i -> n-1-i realizes x -> -x exactly.
MatrixXcd reflection_map(const SpatialGrid& g) {
  if (!g.symmetric()) {
    throw std::invalid_argument("harmonic caustic reflection needs a symmetric grid");
  }
  MatrixXcd p = MatrixXcd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) p(i, g.n - 1 - i) = 1.0;
  return p;
}

}  // namespace

VectorXd SpatialGrid::points() const {
  VectorXd x(n);
  const double dx = spacing();
  for (int i = 0; i < n; ++i) x(i) = x_min + i * dx;
  return x;
}

void validate_grid(const SpatialGrid& g) {
  if (g.n < 8) throw std::invalid_argument("spatial grid needs at least 8 points");
  if (!(g.x_max > g.x_min)) throw std::invalid_argument("spatial grid bounds out of order");
}

MatrixXcd propagator_matrix(const Hamiltonian& h, double t, const SpatialGrid& g) {
  validate_grid(g);
  if (t < 0.0) throw std::invalid_argument("propagation time must be nonnegative");
  if (h.kind == Hamiltonian::Kind::kFrozen || t == 0.0) return identity_map(g.n);

  const VectorXd x = g.points();
  const double dx = g.spacing();
  const Scalar img(0.0, 1.0);

  if (h.kind == Hamiltonian::Kind::kFree) {
    const Scalar pref = std::sqrt(Scalar(h.mass / (2.0 * kPi * t)) * (-img)) * dx;
    const double a = h.mass / (2.0 * t);
    MatrixXcd k(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) {
        const double d = x(i) - x(j);
        k(i, j) = pref * std::exp(img * (a * d * d));
      }
    }
    return k;
  }

  // Harmonic kernel with the Maslov phase e^{-i k pi/2} for wt past the
  // k-th caustic; at the caustic itself the kernel is an exact identity or
  // reflection map times that phase.
  const double wt = h.omega * t;
  const double s = std::sin(wt);
  const double c = std::cos(wt);
  const long maslov = static_cast<long>(std::floor(wt / kPi + kCausticTol));
  const Scalar phase = std::exp(-img * (kPi / 2.0) * static_cast<double>(maslov % 4));
  if (std::abs(s) < kCausticTol) {
    const bool reflect = (maslov % 2) != 0;
    return phase * (reflect ? reflection_map(g) : identity_map(g.n));
  }
  const double mw = h.mass * h.omega;
  const Scalar pref =
      phase * std::sqrt(Scalar(mw / (2.0 * kPi * std::abs(s)))) * std::exp(-img * (kPi / 4.0)) * dx;
  MatrixXcd k(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double action = mw * ((x(i) * x(i) + x(j) * x(j)) * c - 2.0 * x(i) * x(j)) / (2.0 * s);
      k(i, j) = pref * std::exp(img * action);
    }
  }
  return k;
}

double wave_norm(const VectorXcd& psi, const SpatialGrid& g) {
  return std::sqrt(psi.squaredNorm() * g.spacing());
}

VectorXcd propagate(const VectorXcd& psi, const Hamiltonian& h, double t, const SpatialGrid& g) {
  if (psi.size() != g.n) throw std::invalid_argument("wavefunction size does not match grid");
  const double total = psi.squaredNorm();
  if (total == 0.0) throw std::invalid_argument("cannot propagate the zero vector");
  const double edge = psi.head(2).squaredNorm() + psi.tail(2).squaredNorm();
  if (edge > 1e-8 * total) {
    throw std::runtime_error("grid overflow: wavefunction mass reached the spatial boundary");
  }
  VectorXcd out = propagator_matrix(h, t, g) * psi;
  const double drift = std::abs(std::sqrt(out.squaredNorm()) - std::sqrt(total)) / std::sqrt(total);
  if (drift > 1e-6) {
    throw std::runtime_error("propagation norm drift " + std::to_string(drift) +
                             " exceeds 1e-6; refine the grid");
  }
  return out;
}

VectorXcd gaussian_packet(const SpatialGrid& g, double center, double sigma, double momentum) {
  validate_grid(g);
  if (!(sigma > 0.0)) throw std::invalid_argument("packet width must be positive");
  const VectorXd x = g.points();
  VectorXcd psi(g.n);
  const Scalar img(0.0, 1.0);
  for (int i = 0; i < g.n; ++i) {
    const double u = x(i) - center;
    psi(i) = std::exp(-u * u / (4.0 * sigma * sigma) + img * (momentum * x(i)));
  }
  psi /= wave_norm(psi, g);
  return psi;
}

double resolution_amplitude(double u, double eps) {
  if (std::abs(u) > 6.0 * eps) return 0.0;
  return std::pow(2.0 * kPi * eps * eps, -0.25) * std::exp(-u * u / (4.0 * eps * eps));
}

void validate_config(const TrajectoryConfig& cfg) {
  validate_grid(cfg.grid);
  if (cfg.times.empty() || cfg.times.size() > 4) {
    throw std::invalid_argument("between 1 and 4 events are supported");
  }
  if (cfg.times.front() < 0.0) throw std::invalid_argument("first event time must be >= 0");
  for (std::size_t i = 1; i < cfg.times.size(); ++i) {
    if (!(cfg.times[i] > cfg.times[i - 1])) {
      throw std::invalid_argument("event times must be strictly increasing");
    }
  }
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("resolution eps must be positive");
  if (cfg.psi0.size() != cfg.grid.n) {
    throw std::invalid_argument("initial wavefunction does not match the grid");
  }
}

double joint_position_probability(const TrajectoryConfig& cfg, const std::vector<double>& outcomes) {
  validate_config(cfg);
  if (outcomes.size() != cfg.times.size()) {
    throw std::invalid_argument("one outcome per event required");
  }
  const VectorXd x = cfg.grid.points();
  VectorXcd psi = cfg.psi0;
  double prev = 0.0;
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    const double dt = cfg.times[i] - prev;
    if (dt > 0.0) psi = propagate(psi, cfg.hamiltonian, dt, cfg.grid);
    prev = cfg.times[i];
    for (int j = 0; j < cfg.grid.n; ++j) {
      psi(j) *= resolution_amplitude(outcomes[i] - x(j), cfg.eps);
    }
  }
  const double nrm = wave_norm(psi, cfg.grid);
  return nrm * nrm;
}

DiagonalDensity diagonal_spacetime_density(const TrajectoryConfig& cfg, const OutcomeGrid& og) {
  validate_config(cfg);
  if (!(og.step > 0.0) || !(og.max > og.min)) {
    throw std::invalid_argument("outcome grid bounds out of order");
  }
  const int g = og.points();
  const int n_ev = static_cast<int>(cfg.times.size());
  const int nx = cfg.grid.n;
  double table_sz = 1.0;
  for (int i = 0; i < n_ev; ++i) table_sz *= g;
  if (table_sz > 2.0e8 || (n_ev > 1 && table_sz / g * nx > 1.0e8)) {
    throw std::invalid_argument("outcome table too large; coarsen the grid or drop events");
  }

  const VectorXd x = cfg.grid.points();
  // Amplitude and squared-amplitude stencils, one row per outcome value.
  MatrixXcd amp(g, nx);
  Eigen::MatrixXd amp2(g, nx);
  for (int o = 0; o < g; ++o) {
    for (int j = 0; j < nx; ++j) {
      const double a = resolution_amplitude(og.value(o) - x(j), cfg.eps);
      amp(o, j) = a;
      amp2(o, j) = a * a;
    }
  }

  // Branch columns carry every outcome prefix at once; kernels act on the
  // whole batch as one matrix product per gap.
  MatrixXcd cols(nx, 1);
  cols.col(0) = cfg.times.front() > 0.0
                    ? propagate(cfg.psi0, cfg.hamiltonian, cfg.times.front(), cfg.grid)
                    : cfg.psi0;

  for (int level = 0; level + 1 < n_ev; ++level) {
    const Eigen::Index nc = cols.cols();
    MatrixXcd expanded(nx, nc * g);
    for (Eigen::Index c = 0; c < nc; ++c) {
      for (int o = 0; o < g; ++o) {
        expanded.col(c * g + o) = cols.col(c).cwiseProduct(amp.row(o).transpose());
      }
    }
    const MatrixXcd k =
        propagator_matrix(cfg.hamiltonian, cfg.times[level + 1] - cfg.times[level], cfg.grid);
    cols = k * expanded;
  }

  // Last event: probability of each full branch is the squared norm after
  // one more amplitude factor, i.e. amp2 contracted with |cols|^2.
  const Eigen::MatrixXd dens = cols.cwiseAbs2();
  const Eigen::MatrixXd block = amp2 * dens * cfg.grid.spacing();  // g x prefixes

  DiagonalDensity out;
  out.outcome_grid = og;
  out.n_events = n_ev;
  out.values.resize(static_cast<Eigen::Index>(table_sz));
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    for (int o = 0; o < g; ++o) out.values(c * g + o) = block(o, c);
  }
  out.sum_times_measure = out.values.sum() * std::pow(og.step, n_ev);
  return out;
}

}  // namespace chronoscv::traj
