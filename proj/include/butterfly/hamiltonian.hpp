#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>

#include "butterfly/graph.hpp"
#include "butterfly/state_vector.hpp"

namespace butterfly {

// Dense spectral decomposition is kept to desk scale.
inline constexpr int kExactEigenMaxQubits = 12;

struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
};

// XY model H = J sum_<m,n> (XmXn + YmYn), J in rad/ns. One edge-local term
// per graph edge; (XX+YY) is real in the computational basis, so the dense
// matrix is real symmetric. Dense form and spectrum are built on demand and
// cached; the object is safe to share read-only across workers.
class Hamiltonian {
 public:
  Hamiltonian(QubitGraph graph, double j_rad_per_ns);

  const QubitGraph& graph() const { return graph_; }
  double coupling() const { return j_; }
  const std::vector<std::pair<int, int>>& terms() const { return graph_.edges; }
  std::size_t dim() const { return std::size_t{1} << graph_.n_qubits; }

  const Eigen::MatrixXd& dense() const;
  const Spectrum& spectrum() const;

 private:
  QubitGraph graph_;
  double j_;
  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Eigen::MatrixXd> dense_;
  mutable std::shared_ptr<const Spectrum> spectrum_;
};

}  // namespace butterfly
