#include "butterfly/density_matrix.hpp"

namespace butterfly {

DensityMatrix density_from_state(const StateVector& s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  Eigen::Map<const Eigen::VectorXcd> v(s.data(), d);
  DensityMatrix rho;
  rho.n_qubits = s.n_qubits();
  rho.mat = v * v.adjoint();
  return rho;
}

double expect_z(const DensityMatrix& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.n_qubits) throw ValidationError("qubit index out of range");
  double s = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const double p = rho.mat(i, i).real();
    s += ((i >> qubit) & 1) ? -p : p;
  }
  return s;
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw ValidationError("dimension mismatch");
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::Map<const Eigen::VectorXcd> v(psi.data(), d);
  return (v.adjoint() * rho.mat * v)(0, 0).real();
}

double hermiticity_defect(const DensityMatrix& rho) {
  return (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace butterfly
