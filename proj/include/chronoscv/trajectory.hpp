#pragma once

#include <vector>

#include "chronoscv/linalg.hpp"

namespace chronoscv::traj {

using chronoscv::MatrixXcd;
using chronoscv::Scalar;
using chronoscv::VectorXcd;
using chronoscv::VectorXd;

struct SpatialGrid {
  double x_min = -12.0;
  double x_max = 12.0;
  int n = 1024;

  double spacing() const { return (x_max - x_min) / (n - 1); }
  VectorXd points() const;
  bool symmetric() const { return std::abs(x_min + x_max) < 1e-12; }
};

void validate_grid(const SpatialGrid& g);

struct Hamiltonian {
  enum class Kind { kFree, kHarmonic, kFrozen };
  Kind kind = Kind::kFree;
  double mass = 1.0;
  double omega = 1.0;

  static Hamiltonian free_particle(double mass) { return {Kind::kFree, mass, 0.0}; }
  static Hamiltonian harmonic(double mass, double omega) { return {Kind::kHarmonic, mass, omega}; }
  static Hamiltonian frozen() { return {Kind::kFrozen, 1.0, 0.0}; }
};

/// Sampled analytic propagator kernel times the grid measure, so that
/// psi_out = K * psi_in. Harmonic caustics (|sin wt| ~ 0) reduce to exact
/// identity/reflection maps and need a symmetric grid.
MatrixXcd propagator_matrix(const Hamiltonian& h, double t, const SpatialGrid& g);

/// Applies the kernel by discrete convolution. Throws on norm drift beyond
/// 1e-6 (relative) or when more than 1e-8 of the input mass sits in the two
/// outermost grid cells (grid overflow).
VectorXcd propagate(const VectorXcd& psi, const Hamiltonian& h, double t, const SpatialGrid& g);

/// L2 norm with the continuum measure dx.
double wave_norm(const VectorXcd& psi, const SpatialGrid& g);

/// Normalized Gaussian packet exp(ik x) exp(-(x-c)^2/(4 sigma^2)).
VectorXcd gaussian_packet(const SpatialGrid& g, double center, double sigma, double momentum);

/// Resolution amplitude (2 pi eps^2)^{-1/4} exp(-(u)^2/(4 eps^2)), truncated
/// to zero beyond |u| > 6 eps. Its square integrates to 1 over the record.
double resolution_amplitude(double u, double eps);

struct TrajectoryConfig {
  Hamiltonian hamiltonian;
  std::vector<double> times;  // event times, strictly increasing, first >= 0
  double eps = 0.5;
  SpatialGrid grid;
  VectorXcd psi0;  // state at t = 0
};

void validate_config(const TrajectoryConfig& cfg);

/// Joint record density p(v_1..v_n): alternate kernel propagation and
/// multiplication by the resolution amplitude, then take the final norm^2.
double joint_position_probability(const TrajectoryConfig& cfg, const std::vector<double>& outcomes);

struct OutcomeGrid {
  double min = -6.0;
  double max = 6.0;
  double step = 0.2;

  int points() const { return static_cast<int>(std::lround((max - min) / step)) + 1; }
  double value(int i) const { return min + i * step; }
};

/// Joint density tabulated on the outcome lattice (flattened row-major,
/// event 1 slowest). sum() * step^n approximates the total mass.
struct DiagonalDensity {
  OutcomeGrid outcome_grid;
  int n_events = 0;
  VectorXd values;
  double sum_times_measure = 0.0;
};

DiagonalDensity diagonal_spacetime_density(const TrajectoryConfig& cfg, const OutcomeGrid& og);

}  // namespace chronoscv::traj
