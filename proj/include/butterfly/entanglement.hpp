#pragma once

#include <cstdint>
#include <vector>

#include "butterfly/density_matrix.hpp"
#include "butterfly/state_vector.hpp"

namespace butterfly::entanglement {

// Reduced density matrix over `keep` (ascending qubit order), trace 1.
DensityMatrix partial_trace(const StateVector& s, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Tr rho^2
double purity(const DensityMatrix& rho);

struct GmeResult {
  double value = 0.0;
  std::uint32_t min_cut_mask = 0;  // qubits on the minimizing side (bit set = in A)
};

// Pure-state GME concurrence: min over all 2^{N-1}-1 bipartitions of
// sqrt(2 (1 - Tr rho_A^2)). Evaluated from the Schmidt spectrum of each cut
// so that product states come out at ~1e-16 instead of sqrt(eps).
GmeResult gme_concurrence_pure(const StateVector& s);

// Full local-Pauli tomography: all 3^N settings, multinomial counts from the
// exact Born distribution (shots_per_setting = 0 uses exact expectations),
// linear inversion over all 4^N Pauli strings, then PSD projection.
DensityMatrix simulate_tomography(const StateVector& s, int shots_per_setting,
                                  std::uint64_t seed);

// Eigenvalue clip + trace renormalization.
DensityMatrix psd_project(const DensityMatrix& rho);

}  // namespace butterfly::entanglement
