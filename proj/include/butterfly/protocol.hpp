#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "butterfly/evolve.hpp"
#include "butterfly/graph.hpp"
#include "butterfly/hamiltonian.hpp"
#include "butterfly/noise.hpp"
#include "butterfly/state_vector.hpp"

namespace butterfly {

// true = initial X gate on that qubit
using XMask = std::vector<std::uint8_t>;

enum class InsertGate { X, RxPlusHalfPi, RxMinusHalfPi, I };
enum class RunMode { Abstract, Hardware };

// Which color class receives the Sigma_Z gates. OppositeCenter keeps the
// center qubit untouched for any center choice (the "center is blue"
// behavior); Red/Blue select the literal checkerboard classes.
enum class ZClassPolicy { OppositeCenter, Red, Blue };

struct ProtocolSpec {
  QubitGraph graph;
  double j_rad_per_ns = 2.0 * 3.14159265358979323846 * 3e-3;  // J = 2pi * 3 MHz
  InsertGate insert_gate = InsertGate::X;
  int lv_sign = +1;  // L_V = (I + sign * iX)/sqrt(2); '+' gives negative phi=0 slopes
  RunMode mode = RunMode::Abstract;
  ZClassPolicy z_class = ZClassPolicy::OppositeCenter;
  EvolutionMethod method = ExactEigen{};
  std::vector<double> times_ns;
  std::vector<double> phis;
  int n_mask_sets = 10;
  std::uint64_t seed = 1;
  bool masks_include_center = true;
};

// Each qubit independently true with probability 1/2; deterministic in seed.
std::vector<XMask> sample_x_masks(int n_qubits, int n_sets, std::uint64_t seed,
                                  bool include_center = true, int center = -1);

// Four-case diagonal encoding of Fig-style pulse sequences: the Rz angle on a
// qubit depends on whether it receives a Sigma_Z gate ("red") and whether the
// initial X layer excited it. Derived by frame tracking (X conjugation flips
// the Rz sign, Sigma_Z contributes pi on red qubits) and validated by the
// hardware == abstract equivalence tests.
double encoding_angle(bool in_z_class, bool excited, double phi);

// Builds and runs the butterfly-metrology circuits for one spec. Thread-safe
// after construction (the spectrum cache is populated lazily under a lock);
// every run_* call is a pure function of its arguments.
class Protocol {
 public:
  explicit Protocol(ProtocolSpec spec);

  const ProtocolSpec& spec() const { return spec_; }
  const Hamiltonian& hamiltonian() const { return ham_; }
  const std::vector<int>& z_class_qubits() const { return z_qubits_; }
  int center() const { return spec_.graph.center; }
  int n_qubits() const { return spec_.graph.n_qubits; }

  // <sigma_x> at the center after U e^{-i phi Sz} U^dag L_V U |0>.
  double run_sensing(double t_ns, double phi, const XMask& mask) const;
  double run_sensing_abstract(double t_ns, double phi, const XMask& mask) const;
  // Pulse-sequence form: three forward evolutions, Sigma_Z conjugation and the
  // four-case Z encoding; agrees with abstract mode to ~1e-15.
  double run_sensing_hardware(double t_ns, double phi, const XMask& mask) const;

  // Whole phi curve at fixed (t, mask); shares the phi-independent circuit
  // prefix, bit-identical to pointwise run_sensing.
  std::vector<double> sensing_curve(double t_ns, std::span<const double> phis,
                                    const XMask& mask) const;

  // O_target(t) = <0|V(t) sigma_z V(t)|0> via the insert-gate circuit.
  double run_otoc(double t_ns, int target, const XMask& mask) const;
  // |psi(t)> = V(t)|0> (full circuit incl. trailing X layer).
  StateVector otoc_state(double t_ns, const XMask& mask) const;
  std::vector<double> otoc_all_qubits(double t_ns, const XMask& mask) const;

  // V = I reference, single evolution block of duration 1.5 t; noiseless
  // value is exactly 1.
  double run_reference(double t_ns, const XMask& mask) const;

  // U^dag L_V U |0> including the X factors of U.
  StateVector butterfly_state(double t_ns, const XMask& mask) const;

  // Applies V(t) = U^dag X_center U to an arbitrary state.
  StateVector apply_insert_heisenberg(StateVector s, double t_ns, const XMask& mask) const;

  //--- noisy (hardware-sequence) circuit builders -------------------------
  NoisyCircuit noisy_sensing_circuit(double t_ns, double phi, const XMask& mask) const;
  NoisyCircuit noisy_reference_circuit(double t_ns, const XMask& mask) const;
  NoisyCircuit noisy_otoc_circuit(double t_ns, const XMask& mask) const;

  // Trajectory sensing over a phi grid; the phi-independent trajectory prefix
  // is shared across the grid (common random numbers, unbiased per point).
  struct NoisyCurve {
    std::vector<double> mean, std_error;
  };
  NoisyCurve noisy_sensing_curve(const NoiseModel& noise, double t_ns,
                                 std::span<const double> phis, const XMask& mask,
                                 int n_trajectories, std::uint64_t seed) const;

 private:
  void check_mask(const XMask& mask) const;
  std::vector<double> sensing_curve_mode(RunMode mode, double t_ns,
                                         std::span<const double> phis,
                                         const XMask& mask) const;
  Gate2 insert_unitary() const;
  Gate2 lv_gate() const { return gates::lv_x(spec_.lv_sign); }
  void evolve_by(StateVector& s, double t) const { evolve(s, ham_, t, spec_.method); }
  // backward evolution: abstract uses evolve(-t), hardware conjugates with Sigma_Z
  void evolve_backward(StateVector& s, double t) const;
  std::vector<std::pair<int, Gate2>> encoding_layer(double phi, const XMask& mask) const;

  ProtocolSpec spec_;
  Hamiltonian ham_;
  std::vector<int> z_qubits_;
  double gate_window_ns_ = 20.0;
};

}  // namespace butterfly
