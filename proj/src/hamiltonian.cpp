#include "butterfly/hamiltonian.hpp"

#include <string>

namespace butterfly {

Hamiltonian::Hamiltonian(QubitGraph graph, double j_rad_per_ns)
    : graph_(std::move(graph)), j_(j_rad_per_ns) {}

const Eigen::MatrixXd& Hamiltonian::dense() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!dense_) {
    const int n = graph_.n_qubits;
    if (n > kExactEigenMaxQubits)
      throw ValidationError("dense Hamiltonian capped at " +
                            std::to_string(kExactEigenMaxQubits) + " qubits");
    const std::size_t d = dim();
    auto h = std::make_shared<Eigen::MatrixXd>(Eigen::MatrixXd::Zero(d, d));
    // (XX+YY) on an edge couples |..0a..1b..> <-> |..1a..0b..> with weight 2.
    for (const auto& [a, b] : graph_.edges) {
      const std::size_t ma = std::size_t{1} << a, mb = std::size_t{1} << b;
      for (std::size_t x = 0; x < d; ++x) {
        if (((x & ma) != 0) != ((x & mb) != 0)) (*h)(x, x ^ ma ^ mb) += 2.0 * j_;
      }
    }
    dense_ = std::move(h);
  }
  return *dense_;
}

const Spectrum& Hamiltonian::spectrum() const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (spectrum_) return *spectrum_;
  }
  const Eigen::MatrixXd& h = dense();  // takes the lock itself
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition failed");
  auto spec = std::make_shared<Spectrum>();
  spec->eigenvalues = solver.eigenvalues();
  spec->eigenvectors = solver.eigenvectors();
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!spectrum_) spectrum_ = std::move(spec);
  return *spectrum_;
}

}  // namespace butterfly
