#include "chronoscv/linalg.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace chronoscv {

double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double symmetry_residual(const MatrixXd& m) { return max_abs(MatrixXd(m - m.transpose())); }
double hermiticity_residual(const MatrixXcd& m) { return max_abs(MatrixXcd(m - m.adjoint())); }

double min_eigenvalue(const MatrixXcd& m) {
  MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue_sym(const MatrixXd& m) {
  MatrixXd h = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

nlohmann::json matrix_to_json(const MatrixXd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

nlohmann::json matrix_to_json(const MatrixXcd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(nlohmann::json::array({m(i, j).real(), m(i, j).imag()}));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

nlohmann::json vector_to_json(const VectorXd& v) {
  return matrix_to_json(MatrixXd(v));
}

namespace {

void check_shape(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("matrix JSON must carry rows/cols/data");
  const auto r = j.at("rows").get<std::int64_t>();
  const auto c = j.at("cols").get<std::int64_t>();
  if (r < 0 || c < 0 || j.at("data").size() != static_cast<std::size_t>(r * c))
    throw std::invalid_argument("matrix JSON data length does not match rows*cols");
}

}  // namespace

MatrixXd matrix_from_json(const nlohmann::json& j) {
  check_shape(j);
  MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  const auto& data = j.at("data");
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index jj = 0; jj < m.cols(); ++jj) m(i, jj) = data.at(k++).get<double>();
  return m;
}

MatrixXcd complex_matrix_from_json(const nlohmann::json& j) {
  check_shape(j);
  MatrixXcd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  const auto& data = j.at("data");
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index jj = 0; jj < m.cols(); ++jj) {
      const auto& e = data.at(k++);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("complex entries must be [re,im] pairs");
      m(i, jj) = Scalar(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

VectorXd vector_from_json(const nlohmann::json& j) {
  MatrixXd m = matrix_from_json(j);
  if (m.cols() != 1) throw std::invalid_argument("vector JSON must have cols == 1");
  return VectorXd(m.col(0));
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("CHRONOS_CV_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < hw) hw = cap;
  }
  return hw;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("parallel_for worker failed");
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace chronoscv
