#pragma once

#include "chronoscv/spacetime_wigner.hpp"

namespace chronoscv::cj {

using chronoscv::MatrixXcd;
using chronoscv::Scalar;

/// Unnormalized maximally entangled projector sum_{n,m} |n,a><m,a| x |n,a><m,a|
/// built on the displaced number basis |n,a> = D(a)|n> (trace = dim).
MatrixXcd cv_phi_plus(int dim, Scalar alpha = Scalar(0, 0));

/// Partial transpose over the second tensor factor.
MatrixXcd partial_transpose_second(const MatrixXcd& m, int dim);

struct JamiolkowskiOperator {
  int dim = 0;
  MatrixXcd m;  // dim^2 x dim^2, Hermitian
};

/// E = (I (x) channel)(Phi+^Gamma). The first factor carries the earlier
/// event, the second the channel output at the later event, matching the
/// tensor order used by sequential correlations. For the identity channel and
/// alpha = 0 this is the swap operator.
JamiolkowskiOperator jamiolkowski(const std::vector<MatrixXcd>& kraus, int dim,
                                  Scalar alpha = Scalar(0, 0));

/// R = (E (rho x I) + (rho x I) E) / 2.
stw::SpacetimeDensityMatrix jordan_state(const MatrixXcd& rho_a, const JamiolkowskiOperator& e);

/// Partial traces on the bipartite space.
MatrixXcd trace_out_second(const MatrixXcd& m, int dim);
MatrixXcd trace_out_first(const MatrixXcd& m, int dim);

}  // namespace chronoscv::cj
