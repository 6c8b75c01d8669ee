#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chronoscv/linalg.hpp"

namespace chronoscv::gauss {

/// Quadrature ordering is (q_1, p_1, ..., q_N, p_N) with [q, p] = i.
/// Covariance is kept in the doubled convention: vacuum has cov = I and
/// thermal occupation nbar gives cov = (2 nbar + 1) I, so ordinary
/// (symmetrized, centered) second moments are cov / 2.
enum class ReferenceKind { kVacuum, kThermal, kCoherent, kTmss };

struct GaussianState {
  int n_modes = 0;
  VectorXd mean;  // length 2 n_modes
  MatrixXd cov;   // 2 n_modes x 2 n_modes, symmetric

  /// Construction provenance when made by make_reference_state; consumed by
  /// the Fock-space embedding, which only supports the reference families.
  std::optional<ReferenceKind> kind;
  std::vector<double> kind_params;
};

struct UncertaintyReport {
  double min_eig = 0.0;  // smallest eigenvalue of cov + i Omega
  bool physical = false;
};

/// Block-diagonal symplectic form, one [[0,1],[-1,0]] block per mode.
MatrixXd symplectic_form(int n_modes);

/// vacuum: {} | thermal: {nbar} | coherent: {re_alpha, im_alpha} |
/// tmss: {r} two-mode squeezed vacuum at squeezing phase 0.
GaussianState make_reference_state(ReferenceKind kind, const std::vector<double>& params);

/// Validates dimensions and symmetry (1e-12); throws std::invalid_argument.
void validate_state(const GaussianState& g);

/// Physicality means min eig(cov + i Omega) >= -1e-9.
UncertaintyReport check_uncertainty(const GaussianState& g);

/// chi(xi) = exp[-1/4 xi^T (Omega cov Omega^T) xi - i (Omega mean)^T xi].
Scalar char_function(const GaussianState& g, const VectorXd& xi);

/// W(x) = exp[-(x-d)^T cov^{-1} (x-d)] / (pi^N sqrt(det cov)), evaluated with
/// cov + reg*I when reg > 0. A singular covariance at reg == 0 throws
/// std::domain_error naming the null direction.
double wigner(const GaussianState& g, const VectorXd& x, double reg = 0.0);

/// Keeps the listed modes (0-based, strictly increasing).
GaussianState partial_trace(const GaussianState& g, const std::vector<int>& keep);

/// Flips the sign of p on the listed modes.
GaussianState partial_transpose(const GaussianState& g, const std::vector<int>& modes);

/// Acts as mean -> X mean + shift, cov -> X cov X^T + 2 Y (Y in the
/// ordinary-moment convention, hence the factor 2 here).
struct GaussianChannel {
  MatrixXd X;
  MatrixXd Y;
  VectorXd shift;

  static GaussianChannel identity(int n_modes);
  static GaussianChannel attenuation(double eta, int n_modes);
  static GaussianChannel rotation(double theta, int n_modes);
  static GaussianChannel displacement(const VectorXd& shift);

  /// Complete positivity: Y + i Omega/2 - i X Omega X^T/2 >= 0 (tol -1e-9).
  bool is_completely_positive() const;
};

GaussianState apply_channel(const GaussianState& g, const GaussianChannel& c);

}  // namespace chronoscv::gauss
