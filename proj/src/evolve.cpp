#include "butterfly/evolve.hpp"

#include <cmath>
#include <string>

namespace butterfly {

namespace {

void evolve_exact(StateVector& s, const Hamiltonian& h, double t) {
  if (s.n_qubits() > kExactEigenMaxQubits)
    throw ValidationError("exact-eigen evolution capped at " +
                          std::to_string(kExactEigenMaxQubits) + " qubits; use Trotter2");
  const Spectrum& spec = h.spectrum();
  const Eigen::MatrixXd& v = spec.eigenvectors;
  const auto dim = static_cast<Eigen::Index>(s.dim());

  using StridedVec = Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<2>>;
  const double* raw = reinterpret_cast<const double*>(s.data());
  StridedVec re(raw, dim), im(raw + 1, dim);

  // to eigenbasis, phase, back; V is real so real/imag parts transform separately
  Eigen::VectorXd ur = v.transpose() * re;
  Eigen::VectorXd ui = v.transpose() * im;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double c = std::cos(spec.eigenvalues[k] * t);
    const double sn = -std::sin(spec.eigenvalues[k] * t);
    const double r = ur[k], i = ui[k];
    ur[k] = r * c - i * sn;
    ui[k] = r * sn + i * c;
  }
  Eigen::VectorXd outr = v * ur;
  Eigen::VectorXd outi = v * ui;
  cdouble* a = s.data();
  for (Eigen::Index k = 0; k < dim; ++k) a[k] = cdouble(outr[k], outi[k]);
}

void evolve_trotter2(StateVector& s, const Hamiltonian& h, double t, double dt) {
  if (dt <= 0) throw ValidationError("Trotter2 step must be positive");
  const auto& edges = h.terms();
  const long long steps = std::max<long long>(1, std::llround(std::abs(t) / dt));
  const double half = t / static_cast<double>(steps) / 2.0;
  const double theta = h.coupling() * half;  // exp(-i J tau (XX+YY)) per edge
  for (long long step = 0; step < steps; ++step) {
    for (auto it = edges.begin(); it != edges.end(); ++it)
      kernels::apply_xy(s.data(), s.dim(), it->first, it->second, theta);
    for (auto it = edges.rbegin(); it != edges.rend(); ++it)
      kernels::apply_xy(s.data(), s.dim(), it->first, it->second, theta);
  }
}

}  // namespace

void evolve(StateVector& s, const Hamiltonian& h, double t, const EvolutionMethod& method) {
  if (s.n_qubits() != h.graph().n_qubits)
    throw ValidationError("state and Hamiltonian qubit counts differ");
  if (t == 0.0) return;
  if (std::holds_alternative<ExactEigen>(method))
    evolve_exact(s, h, t);
  else
    evolve_trotter2(s, h, t, std::get<Trotter2>(method).dt_ns);
}

}  // namespace butterfly
