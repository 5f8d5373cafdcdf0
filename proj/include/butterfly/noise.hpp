#pragma once

#include <array>
#include <map>
#include <random>
#include <vector>

#include "butterfly/density_matrix.hpp"
#include "butterfly/evolve.hpp"
#include "butterfly/hamiltonian.hpp"

namespace butterfly {

// Amplitude damping + pure dephasing applied in fixed time slices, plus
// per-qubit readout assignment matrices.
struct NoiseModel {
  std::vector<double> t1_ns;
  std::vector<double> t2_ns;
  double slice_ns = 4.0;
  double gate_ns = 20.0;  // single-qubit gate window
  std::vector<double> f_gg;
  std::vector<double> f_ee;
};

// Device parameters of the ten-qubit processor, T1/T2 converted to ns.
NoiseModel table1_noise(int n_qubits);

// T2 <= 2*T1 per qubit, slice > 0, fidelities in (0.5, 1].
void validate_noise(const NoiseModel& m, int n_qubits);

// gamma = 1 - exp(-dt/T1)
double damping_probability(double dt_ns, double t1_ns);
// p = (1 - exp(-dt/Tphi))/2 with 1/Tphi = 1/T2 - 1/(2 T1); throws if T2 > 2 T1
double dephasing_probability(double dt_ns, double t1_ns, double t2_ns);

//---------------------------------------------------------------------------
// circuit description consumed by both the trajectory engine and the density
// oracle: gate layers are instantaneous unitaries followed by an idle window,
// evolution segments interleave slice propagators with noise on every qubit
//---------------------------------------------------------------------------

struct NoisyOp {
  enum class Kind { GateLayer, Evolve };
  Kind kind = Kind::GateLayer;
  std::vector<std::pair<int, Gate2>> gates;  // GateLayer only
  double duration_ns = 0.0;                  // idle window or evolution time
};

struct NoisyCircuit {
  int n_qubits = 0;
  const Hamiltonian* hamiltonian = nullptr;  // must outlive the circuit
  std::vector<NoisyOp> ops;
  std::vector<int> measure_qubits;  // sigma_z on each
};

struct TrajectoryConfig {
  int n_trajectories = 2000;
  std::uint64_t seed = 1;
};

struct TrajectoryResult {
  double mean = 0.0;
  double std_error = 0.0;
  int n_trajectories = 0;
};

// Monte-Carlo unraveling: per slice and qubit, amplitude-damping Kraus
// {K0, K1} sampled with Born probabilities, then Z with the dephasing
// probability. Deterministic in (seed, trajectory index) regardless of
// thread count; the mean is a stable pairwise sum over trajectories.
std::vector<TrajectoryResult> run_noisy_trajectories(const NoisyCircuit& c,
                                                     const NoiseModel& m,
                                                     const TrajectoryConfig& cfg);

// Exact Kraus-channel evolution of the density matrix on the same slice
// schedule; cross-check oracle, capped at 6 qubits.
DensityMatrix run_noisy_density(const NoisyCircuit& c, const NoiseModel& m);

//---------------------------------------------------------------------------
// readout
//---------------------------------------------------------------------------

// M = [[f_gg, 1-f_ee], [1-f_gg, f_ee]]
struct AssignmentMatrix {
  double f_gg = 1.0;
  double f_ee = 1.0;
};

// p_meas = M p_true
std::array<double, 2> apply_readout_error(const std::array<double, 2>& p,
                                          const AssignmentMatrix& m);
// p_cali = M^{-1} p_meas; throws when f_gg + f_ee <= 1 (singular M).
// Corrected quasi-probabilities may leave [0,1]; they are returned as-is.
std::array<double, 2> readout_correct(const std::array<double, 2>& p_meas,
                                      const AssignmentMatrix& m);

// <sigma_z> -> apply M -> <sigma_z>, and its exact inverse
double expect_z_through_readout(double expect_z, const AssignmentMatrix& m);
double expect_z_readout_corrected(double expect_z_meas, const AssignmentMatrix& m);

struct NormalizedSignal {
  double value = 0.0;
  bool clipped = false;  // |exp/ref| exceeded 1.2, value clamped
  bool dropped = false;  // |ref| below the 0.05 guard, value is NaN
};

// <sigma_norm(t)> = <sigma_exp(t)> / <sigma_ref(1.5t)>
NormalizedSignal normalize_signal(double exp_value, double ref_value);

//---------------------------------------------------------------------------
// low-level pieces shared with the sweep-specialized sensing runner
//---------------------------------------------------------------------------

namespace noise_detail {

struct PropagatorCache {
  const Hamiltonian* ham = nullptr;
  std::map<double, Eigen::MatrixXcd> by_duration;

  const Eigen::MatrixXcd& get(double duration_ns);
};

// Splits a window into slice_ns pieces (+ remainder) and applies sampled
// damping/dephasing to every qubit after each piece.
void apply_noise_window(StateVector& s, const NoiseModel& m, double window_ns,
                        std::mt19937_64& rng);

// Slice-interleaved noisy evolution for time t_ns (>= 0).
void apply_noisy_evolution(StateVector& s, const NoiseModel& m, PropagatorCache& cache,
                           double t_ns, std::mt19937_64& rng);

}  // namespace noise_detail

}  // namespace butterfly
