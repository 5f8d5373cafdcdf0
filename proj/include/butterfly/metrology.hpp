#pragma once

#include <functional>
#include <span>
#include <vector>

#include "butterfly/state_vector.hpp"

namespace butterfly::metrology {

// <sigma_x>(phi) on a uniform grid symmetric about phi = 0.
struct PhaseCurve {
  std::vector<double> phis;
  std::vector<double> values;
  int n_qubits = 0;
  double t_ns = 0.0;
};

void validate_curve(const PhaseCurve& c);

struct SlopeEstimate {
  double fit = 0.0;          // odd polynomial (degree 5, |phi| <= 0.5 rad), primary value
  double central_diff = 0.0; // finite-difference cross-check
  bool consistent = false;   // the two agree within 2%
};

// s = d<sigma_x>/dphi at phi = 0.
SlopeEstimate slope_at_zero(const PhaseCurve& c);

struct FisherInfo {
  double at_zero = 0.0;            // from the fitted slope
  double max_over_grid = 0.0;
  std::vector<double> phis;        // interior grid points
  std::vector<double> pointwise;   // local-stencil derivative estimate
};

// F = (d<sigma_x>/dphi)^2 / (1 - <sigma_x>^2); throws the saturation guard
// when |<sigma_x>| >= 1 - 1e-6 at an evaluated point.
FisherInfo fisher_information(const PhaseCurve& c);

// eta^{-1} = sqrt(F)
double inverted_sensitivity(double fisher_at_zero);

// eta_OTOC^{-1} = N/2 - sum_j O_j / 2
double eta_inv_from_otoc(std::span<const double> otoc_values, int n_qubits);

// P(S_z) indexed by excitation number k; S_z = (N - 2k)/2.
struct PolarizationDist {
  int n_qubits = 0;
  std::vector<double> p;  // size N+1

  double sz_value(int k) const { return 0.5 * (n_qubits - 2 * k); }
  double mean_sz() const;
};

PolarizationDist polarization_distribution(const StateVector& s);

struct ImTermValue {
  double value = 0.0;               // Im[e^{i phi N/2} sum_k e^{-i phi S_z} P] = sum_k P_k sin(k phi)
  double derivative_at_zero = 0.0;  // N/2 - sum S_z P(S_z)
};

ImTermValue expected_v_from_distribution(const PolarizationDist& p, double phi);

// Residual of the three-term expansion against the directly measured
// <sigma_x>:  direct = (T1 + T4)/2 - s * Im-term, where T1 = <0|V(t)|0>,
// T4 = <0|V(t) e^{i phi Sz} V(t) e^{-i phi Sz} V(t)|0>, s = lv_sign.
double decomposition_residual(const StateVector& v_t_state,
                              const std::function<StateVector(const StateVector&)>& apply_v_t,
                              int lv_sign, double phi, double direct_sx);

struct Bounds {
  double sql;              // eta^{-1}_SQL = sqrt(N)
  double heisenberg;       // eta^{-1}_HL = N
  double protocol_target;  // N/2
};

Bounds bounds(int n_qubits);

}  // namespace butterfly::metrology
