#include "chronoscv/choi_jordan.hpp"

#include <stdexcept>

namespace chronoscv::cj {

MatrixXcd cv_phi_plus(int dim, Scalar alpha) {
  if (dim < 2) throw std::invalid_argument("cv_phi_plus: dim must be at least 2");
  VectorXcd v = VectorXcd::Zero(dim * dim);
  for (int n = 0; n < dim; ++n) v(n * dim + n) = 1.0;
  if (alpha != Scalar(0, 0)) {
    const MatrixXcd d = fock::displacement(alpha, dim);
    v = fock::kron(d, d) * v;
  }
  return v * v.adjoint();
}

MatrixXcd partial_transpose_second(const MatrixXcd& m, int dim) {
  if (m.rows() != dim * dim || m.cols() != dim * dim)
    throw std::invalid_argument("partial_transpose_second: dimension mismatch");
  MatrixXcd out(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d)
          out(a * dim + b, c * dim + d) = m(a * dim + d, c * dim + b);
  return out;
}

JamiolkowskiOperator jamiolkowski(const std::vector<MatrixXcd>& kraus, int dim, Scalar alpha) {
  for (const auto& k : kraus) {
    if (k.rows() != dim || k.cols() != dim)
      throw std::invalid_argument("jamiolkowski: Kraus dimension mismatch");
  }
  JamiolkowskiOperator e;
  e.dim = dim;

  if (alpha == Scalar(0, 0)) {
    // In the undisplaced basis the transposed projector is the swap operator,
    // and (I x K) S (I x K)^dag contracts to K(b,c) conj(K(d,a)) entrywise.
    // Accumulating the flattened-Kraus Gram matrix and permuting indices
    // avoids the dim^6 operator products of the generic route.
    MatrixXcd gram = MatrixXcd::Zero(dim * dim, dim * dim);
    for (const auto& k : kraus) {
      VectorXcd flat(dim * dim);
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) flat(b * dim + c) = k(b, c);
      gram.noalias() += flat * flat.adjoint();
    }
    e.m.resize(dim * dim, dim * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          for (int d = 0; d < dim; ++d)
            e.m(a * dim + b, c * dim + d) = gram(b * dim + c, d * dim + a);
    return e;
  }

  const MatrixXcd gamma = partial_transpose_second(cv_phi_plus(dim, alpha), dim);
  e.m = MatrixXcd::Zero(dim * dim, dim * dim);
  const MatrixXcd eye = MatrixXcd::Identity(dim, dim);
  for (const auto& k : kraus) {
    const MatrixXcd kk = fock::kron(eye, k);
    e.m += kk * gamma * kk.adjoint();
  }
  e.m = 0.5 * (e.m + e.m.adjoint()).eval();
  return e;
}

stw::SpacetimeDensityMatrix jordan_state(const MatrixXcd& rho_a, const JamiolkowskiOperator& e) {
  const int dim = e.dim;
  if (rho_a.rows() != dim || rho_a.cols() != dim)
    throw std::invalid_argument("jordan_state: rho_a dimension mismatch");
  const MatrixXcd rho_ext = fock::kron(rho_a, MatrixXcd::Identity(dim, dim));
  stw::SpacetimeDensityMatrix r;
  r.n_events = 2;
  r.dim = dim;
  r.m = 0.5 * (e.m * rho_ext + rho_ext * e.m);
  r.hermiticity = hermiticity_residual(r.m);
  const int safe = std::max(1, dim / 4);
  Scalar tr(0, 0);
  for (int i = 0; i <= safe; ++i)
    for (int j = 0; j <= safe; ++j) tr += r.m(i * dim + j, i * dim + j);
  r.trace_safe = tr.real();
  return r;
}

MatrixXcd trace_out_second(const MatrixXcd& m, int dim) {
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int c = 0; c < dim; ++c)
      for (int b = 0; b < dim; ++b) out(a, c) += m(a * dim + b, c * dim + b);
  return out;
}

MatrixXcd trace_out_first(const MatrixXcd& m, int dim) {
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int d = 0; d < dim; ++d)
      for (int a = 0; a < dim; ++a) out(b, d) += m(a * dim + b, a * dim + d);
  return out;
}

}  // namespace chronoscv::cj
