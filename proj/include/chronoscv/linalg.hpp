#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>

#include <json.hpp>

namespace chronoscv {

using Scalar = std::complex<double>;
using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;

/// Largest absolute entry; zero-size matrices count as 0.
double max_abs(const MatrixXd& m);
double max_abs(const MatrixXcd& m);

/// Deviation from (Hermitian) symmetry in max-abs norm.
double symmetry_residual(const MatrixXd& m);
double hermiticity_residual(const MatrixXcd& m);

/// Minimum eigenvalue of a Hermitian matrix (input is Hermitized first).
double min_eigenvalue(const MatrixXcd& m);
double min_eigenvalue_sym(const MatrixXd& m);

/// Wire format: {"rows":r,"cols":c,"data":[...]} row-major,
/// complex entries encoded as [re,im] pairs.
nlohmann::json matrix_to_json(const MatrixXd& m);
nlohmann::json matrix_to_json(const MatrixXcd& m);
nlohmann::json vector_to_json(const VectorXd& v);
MatrixXd matrix_from_json(const nlohmann::json& j);
MatrixXcd complex_matrix_from_json(const nlohmann::json& j);
VectorXd vector_from_json(const nlohmann::json& j);

/// Worker cap: CHRONOS_CV_THREADS if set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0,n). Work is chunked in fixed blocks so that
/// results written to preallocated slots are independent of thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

/// FNV-1a hash of a string, used for config fingerprints in metadata.
std::string fnv1a_hex(const std::string& s);

}  // namespace chronoscv
