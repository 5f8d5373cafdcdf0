#pragma once

#include <cstddef>
#include <vector>

#include "butterfly/common.hpp"
#include "butterfly/gates.hpp"
#include "butterfly/kernels.hpp"

namespace butterfly {

// Up to this many qubits a state can be allocated; exact-eigen evolution has
// a tighter cap (see evolve.hpp). 2^24 amplitudes = 256 MiB.
inline constexpr int kMaxQubits = 24;

// 2^n complex amplitudes, little-endian: qubit k is bit k of the basis index,
// bit value 1 means |1> of that qubit, and sigma_z|0> = +|0> (so the all-zero
// state has S_z = +N/2).
class StateVector {
 public:
  StateVector(int n_qubits, std::vector<cdouble> amplitudes);

  // |00...0>
  static StateVector zero(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  cdouble* data() { return amps_.data(); }
  const cdouble* data() const { return amps_.data(); }
  cdouble amplitude(std::size_t i) const { return amps_[i]; }
  std::vector<cdouble>& amplitudes() { return amps_; }
  const std::vector<cdouble>& amplitudes() const { return amps_; }

  double norm() const;

 private:
  int n_qubits_;
  std::vector<cdouble> amps_;
};

// gate on one qubit, identity elsewhere; checks unitarity and index range
void apply_1q(StateVector& s, int qubit, const Gate2& g,
              kernels::Exec e = kernels::Exec::Auto);

// exp(-i phi S_z) as a single diagonal pass over popcounts
void apply_phase_encoding(StateVector& s, double phi, kernels::Exec e = kernels::Exec::Auto);

// X on every masked qubit
void apply_x_layer(StateVector& s, const std::vector<std::uint8_t>& mask);

// Z on the listed qubits
void apply_z_on(StateVector& s, const std::vector<int>& qubits);

double expect_z(const StateVector& s, int qubit);
double expect_x(const StateVector& s, int qubit);
double expect_sz(const StateVector& s);
cdouble inner(const StateVector& a, const StateVector& b);

}  // namespace butterfly
