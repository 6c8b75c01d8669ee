#pragma once

#include <vector>

#include "chronoscv/gaussian.hpp"

namespace chronoscv::fock {

using chronoscv::MatrixXcd;
using chronoscv::Scalar;
using chronoscv::VectorXcd;

/// Density operator on an n_modes-fold tensor power of a dim-level
/// truncated oscillator (row index varies fastest on the last mode).
struct FockState {
  int dim = 0;
  int n_modes = 1;
  MatrixXcd rho;
};

MatrixXcd annihilation(int dim);
MatrixXcd creation(int dim);
MatrixXcd number_op(int dim);
MatrixXcd position_op(int dim);   // (a + a^dag)/sqrt(2)
MatrixXcd momentum_op(int dim);   // i (a^dag - a)/sqrt(2)

/// Projection of exp(xi a^dag - conj(xi) a) onto the truncated space, with
/// exact continuum matrix elements. Unitary to truncation accuracy on
/// displacement-safe blocks; columns near the cutoff are subnormalized.
MatrixXcd displacement(Scalar xi, int dim);

/// Photon content |xi|^2 should stay well under dim; this flags |xi|^2 > dim/4.
bool displacement_safe(Scalar xi, int dim);

/// diag(+1,-1,+1,...)
MatrixXcd parity_op(int dim);

/// T(alpha) = 2 D(alpha) (-1)^n D(alpha)^dag: Hermitian; T^2 = 4 I holds on
/// displacement-safe blocks.
MatrixXcd t_operator(Scalar alpha, int dim);

/// (2 I +- T(alpha))/4, even first: the +-2-outcome instrument of the
/// displaced-parity readout. Complementary by construction (even + odd = I);
/// idempotent only on displacement-safe blocks.
std::pair<MatrixXcd, MatrixXcd> parity_projectors(Scalar alpha, int dim);

VectorXcd coherent_state(Scalar alpha, int dim);
MatrixXcd thermal_state(double nbar, int dim);       // renormalized to unit trace
VectorXcd two_mode_squeezed_vacuum(double r, int dim);  // dim^2 amplitudes

/// Embeds a reference-family Gaussian state. The family is taken from the
/// provenance tag when present, otherwise recovered structurally (vacuum,
/// coherent, thermal); anything else throws std::invalid_argument.
FockState gaussian_to_fock(const gauss::GaussianState& g, int dim);

/// sum_k K rho K^dag. Completeness sum_k K^dag K = I is enforced within 1e-8
/// unless allow_subnormalized is set.
MatrixXcd apply_kraus(const MatrixXcd& rho, const std::vector<MatrixXcd>& kraus,
                      bool allow_subnormalized = false);

std::vector<MatrixXcd> identity_kraus(int dim);
std::vector<MatrixXcd> attenuation_kraus(double eta, int dim);
std::vector<MatrixXcd> rotation_kraus(double theta, int dim);

double expectation(const MatrixXcd& op, const MatrixXcd& rho);

/// Hermitian matrix function via eigendecomposition.
MatrixXcd hermitian_exp(const MatrixXcd& h);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

}  // namespace chronoscv::fock
