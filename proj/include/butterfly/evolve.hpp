#pragma once

#include <variant>

#include "butterfly/hamiltonian.hpp"
#include "butterfly/state_vector.hpp"

namespace butterfly {

struct ExactEigen {};

// Symmetric second-order product formula over the edge terms; each edge term
// is applied as the closed-form rotation on its {|01>,|10>} subspace.
struct Trotter2 {
  double dt_ns = 2.0;
};

using EvolutionMethod = std::variant<ExactEigen, Trotter2>;

// psi <- exp(-i H t) psi. t may be negative (backward evolution).
void evolve(StateVector& s, const Hamiltonian& h, double t_ns,
            const EvolutionMethod& method = ExactEigen{});

}  // namespace butterfly
