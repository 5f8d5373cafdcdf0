#include "butterfly/state_vector.hpp"

#include <cmath>
#include <string>

namespace butterfly {

StateVector::StateVector(int n_qubits, std::vector<cdouble> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw ValidationError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  if (amps_.size() != (std::size_t{1} << n_qubits))
    throw ValidationError("amplitude vector size does not match qubit count");
}

StateVector StateVector::zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw ValidationError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
  std::vector<cdouble> a(std::size_t{1} << n_qubits, cdouble(0));
  a[0] = 1.0;
  return StateVector(n_qubits, std::move(a));
}

double StateVector::norm() const { return std::sqrt(kernels::norm_sq(data(), dim())); }

void apply_1q(StateVector& s, int qubit, const Gate2& g, kernels::Exec e) {
  if (qubit < 0 || qubit >= s.n_qubits())
    throw ValidationError("qubit index " + std::to_string(qubit) + " out of range");
  check_unitary(g);
  kernels::apply_1q(s.data(), s.dim(), qubit, g, e);
}

void apply_phase_encoding(StateVector& s, double phi, kernels::Exec e) {
  const int n = s.n_qubits();
  std::vector<cdouble> phase(n + 1);
  for (int k = 0; k <= n; ++k) phase[k] = std::exp(cdouble(0, -phi * (n - 2 * k) / 2.0));
  kernels::apply_popcount_phase(s.data(), s.dim(), phase.data(), e);
}

void apply_x_layer(StateVector& s, const std::vector<std::uint8_t>& mask) {
  if (static_cast<int>(mask.size()) != s.n_qubits())
    throw ValidationError("x-mask length does not match qubit count");
  for (int q = 0; q < s.n_qubits(); ++q)
    if (mask[q]) kernels::apply_1q(s.data(), s.dim(), q, gates::x());
}

void apply_z_on(StateVector& s, const std::vector<int>& qubits) {
  for (int q : qubits) {
    if (q < 0 || q >= s.n_qubits())
      throw ValidationError("qubit index " + std::to_string(q) + " out of range");
    kernels::apply_1q(s.data(), s.dim(), q, gates::z());
  }
}

double expect_z(const StateVector& s, int qubit) {
  if (qubit < 0 || qubit >= s.n_qubits()) throw ValidationError("qubit index out of range");
  return kernels::expect_z(s.data(), s.dim(), qubit);
}

double expect_x(const StateVector& s, int qubit) {
  if (qubit < 0 || qubit >= s.n_qubits()) throw ValidationError("qubit index out of range");
  return kernels::expect_x(s.data(), s.dim(), qubit);
}

double expect_sz(const StateVector& s) {
  return kernels::expect_sz(s.data(), s.dim(), s.n_qubits());
}

cdouble inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("state dimensions differ");
  return kernels::inner(a.data(), b.data(), a.dim());
}

}  // namespace butterfly
