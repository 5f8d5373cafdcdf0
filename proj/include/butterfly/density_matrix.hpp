#pragma once

#include <Eigen/Dense>

#include "butterfly/state_vector.hpp"

namespace butterfly {

struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd mat;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

DensityMatrix density_from_state(const StateVector& s);

double expect_z(const DensityMatrix& rho, int qubit);

// <psi| rho |psi>
double fidelity(const DensityMatrix& rho, const StateVector& psi);

// max |rho - rho^dag|
double hermiticity_defect(const DensityMatrix& rho);

}  // namespace butterfly
