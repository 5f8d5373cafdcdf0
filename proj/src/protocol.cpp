#include "butterfly/protocol.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "butterfly/reduce.hpp"
#include "butterfly/rng.hpp"

namespace butterfly {

namespace {
constexpr std::uint64_t kStreamMasks = 0x6d61736bULL;
constexpr std::uint64_t kStreamPrefix = 0x70726566ULL;
constexpr std::uint64_t kStreamSuffix = 0x73756666ULL;
constexpr double kPi = std::numbers::pi;
}  // namespace

std::vector<XMask> sample_x_masks(int n_qubits, int n_sets, std::uint64_t seed,
                                  bool include_center, int center) {
  if (n_sets < 1) throw ValidationError("need at least one mask set");
  if (n_qubits < 1) throw ValidationError("need at least one qubit");
  auto rng = make_rng(derive_seed(seed, kStreamMasks));
  std::vector<XMask> out(n_sets);
  for (auto& mask : out) {
    mask.resize(n_qubits);
    for (int q = 0; q < n_qubits; ++q) mask[q] = static_cast<std::uint8_t>(rng() & 1u);
    if (!include_center && center >= 0 && center < n_qubits) mask[center] = 0;
  }
  return out;
}

double encoding_angle(bool in_z_class, bool excited, double phi) {
  if (in_z_class) return excited ? kPi - phi : kPi + phi;
  return excited ? -phi : phi;
}

Protocol::Protocol(ProtocolSpec spec)
    : spec_(std::move(spec)), ham_(spec_.graph, spec_.j_rad_per_ns) {
  for (double t : spec_.times_ns)
    if (t < 0) throw ValidationError("protocol times must be nonnegative");
  const Color center_color = spec_.graph.coloring[spec_.graph.center];
  Color z_color;
  switch (spec_.z_class) {
    case ZClassPolicy::OppositeCenter:
      z_color = center_color == Color::Blue ? Color::Red : Color::Blue;
      break;
    case ZClassPolicy::Red:
      z_color = Color::Red;
      break;
    case ZClassPolicy::Blue:
      z_color = Color::Blue;
      break;
    default:
      throw ValidationError("bad z-class policy");
  }
  for (int q = 0; q < spec_.graph.n_qubits; ++q)
    if (spec_.graph.coloring[q] == z_color) z_qubits_.push_back(q);
}

void Protocol::check_mask(const XMask& mask) const {
  if (static_cast<int>(mask.size()) != spec_.graph.n_qubits)
    throw ValidationError("x-mask length does not match qubit count");
}

Gate2 Protocol::insert_unitary() const {
  switch (spec_.insert_gate) {
    case InsertGate::X:
      return gates::x();
    case InsertGate::RxPlusHalfPi:
      return gates::rx(kPi / 2);
    case InsertGate::RxMinusHalfPi:
      return gates::rx(-kPi / 2);
    case InsertGate::I:
      return gates::identity();
  }
  throw ValidationError("bad insert gate");
}

void Protocol::evolve_backward(StateVector& s, double t) const {
  if (spec_.mode == RunMode::Abstract) {
    evolve_by(s, -t);
  } else {
    apply_z_on(s, z_qubits_);
    evolve_by(s, t);
    apply_z_on(s, z_qubits_);
  }
}

//---------------------------------------------------------------------------
// sensing
//---------------------------------------------------------------------------

std::vector<double> Protocol::sensing_curve_mode(RunMode mode, double t,
                                                 std::span<const double> phis,
                                                 const XMask& mask) const {
  check_mask(mask);
  const int c = center();
  std::vector<double> out;
  out.reserve(phis.size());

  if (mode == RunMode::Abstract) {
    // prefix: |psi_B> = X e^{+iHt} L_V e^{-iHt} X |0>
    StateVector psi_b = StateVector::zero(n_qubits());
    apply_x_layer(psi_b, mask);
    evolve_by(psi_b, t);
    apply_1q(psi_b, c, lv_gate());
    evolve_by(psi_b, -t);
    apply_x_layer(psi_b, mask);
    for (double phi : phis) {
      StateVector s = psi_b;
      apply_phase_encoding(s, phi);
      apply_x_layer(s, mask);
      evolve_by(s, t);
      out.push_back(expect_x(s, c));
    }
    return out;
  }

  // hardware: X | U(t) | L_V then Sigma_Z | U(t) | four-case Z layer | U(t) | Y
  StateVector pre = StateVector::zero(n_qubits());
  apply_x_layer(pre, mask);
  evolve_by(pre, t);
  apply_1q(pre, c, lv_gate());
  apply_z_on(pre, z_qubits_);
  evolve_by(pre, t);
  for (double phi : phis) {
    StateVector s = pre;
    for (const auto& [q, g] : encoding_layer(phi, mask)) apply_1q(s, q, g);
    evolve_by(s, t);
    apply_1q(s, c, gates::ry(-kPi / 2));  // sigma_x basis rotation
    out.push_back(expect_z(s, c));
  }
  return out;
}

std::vector<double> Protocol::sensing_curve(double t, std::span<const double> phis,
                                            const XMask& mask) const {
  return sensing_curve_mode(spec_.mode, t, phis, mask);
}

double Protocol::run_sensing_abstract(double t, double phi, const XMask& mask) const {
  const double phis[1] = {phi};
  return sensing_curve_mode(RunMode::Abstract, t, phis, mask)[0];
}

double Protocol::run_sensing_hardware(double t, double phi, const XMask& mask) const {
  const double phis[1] = {phi};
  return sensing_curve_mode(RunMode::Hardware, t, phis, mask)[0];
}

double Protocol::run_sensing(double t, double phi, const XMask& mask) const {
  const double phis[1] = {phi};
  return sensing_curve_mode(spec_.mode, t, phis, mask)[0];
}

std::vector<std::pair<int, Gate2>> Protocol::encoding_layer(double phi,
                                                            const XMask& mask) const {
  std::vector<std::pair<int, Gate2>> layer;
  layer.reserve(n_qubits());
  std::vector<bool> in_z(n_qubits(), false);
  for (int q : z_qubits_) in_z[q] = true;
  for (int q = 0; q < n_qubits(); ++q)
    layer.emplace_back(q, gates::rz(encoding_angle(in_z[q], mask[q] != 0, phi)));
  return layer;
}

//---------------------------------------------------------------------------
// OTOC / reference / butterfly state
//---------------------------------------------------------------------------

StateVector Protocol::otoc_state(double t, const XMask& mask) const {
  check_mask(mask);
  StateVector s = StateVector::zero(n_qubits());
  apply_x_layer(s, mask);
  evolve_by(s, t);
  apply_1q(s, center(), insert_unitary());
  evolve_backward(s, t);
  apply_x_layer(s, mask);
  return s;
}

double Protocol::run_otoc(double t, int target, const XMask& mask) const {
  if (target < 0 || target >= n_qubits()) throw ValidationError("target qubit out of range");
  return expect_z(otoc_state(t, mask), target);
}

std::vector<double> Protocol::otoc_all_qubits(double t, const XMask& mask) const {
  const StateVector s = otoc_state(t, mask);
  std::vector<double> out(n_qubits());
  for (int q = 0; q < n_qubits(); ++q) out[q] = expect_z(s, q);
  return out;
}

double Protocol::run_reference(double t, const XMask& mask) const {
  check_mask(mask);
  StateVector s = StateVector::zero(n_qubits());
  apply_x_layer(s, mask);
  evolve_by(s, 1.5 * t);
  evolve_backward(s, 1.5 * t);
  apply_x_layer(s, mask);
  return expect_z(s, center());
}

StateVector Protocol::butterfly_state(double t, const XMask& mask) const {
  check_mask(mask);
  StateVector s = StateVector::zero(n_qubits());
  apply_x_layer(s, mask);
  evolve_by(s, t);
  apply_1q(s, center(), insert_unitary());
  evolve_by(s, -t);
  apply_x_layer(s, mask);
  return s;
}

StateVector Protocol::apply_insert_heisenberg(StateVector s, double t,
                                              const XMask& mask) const {
  check_mask(mask);
  apply_x_layer(s, mask);
  evolve_by(s, t);
  apply_1q(s, center(), insert_unitary());
  evolve_by(s, -t);
  apply_x_layer(s, mask);
  return s;
}

//---------------------------------------------------------------------------
// noisy circuits (hardware sequences: all evolutions run forward)
//---------------------------------------------------------------------------

namespace {
std::vector<std::pair<int, Gate2>> x_layer_gates(const XMask& mask) {
  std::vector<std::pair<int, Gate2>> g;
  for (int q = 0; q < static_cast<int>(mask.size()); ++q)
    if (mask[q]) g.emplace_back(q, gates::x());
  return g;
}
}  // namespace

NoisyCircuit Protocol::noisy_sensing_circuit(double t, double phi, const XMask& mask) const {
  check_mask(mask);
  NoisyCircuit c;
  c.n_qubits = n_qubits();
  c.hamiltonian = &ham_;
  c.measure_qubits = {center()};
  const double w = gate_window_ns_;

  NoisyOp x_layer{NoisyOp::Kind::GateLayer, x_layer_gates(mask), w};
  NoisyOp mid{NoisyOp::Kind::GateLayer, {}, w};
  mid.gates.emplace_back(center(), lv_gate());
  for (int q : z_qubits_) mid.gates.emplace_back(q, gates::z());
  NoisyOp enc{NoisyOp::Kind::GateLayer, encoding_layer(phi, mask), w};
  NoisyOp meas_rot{NoisyOp::Kind::GateLayer, {{center(), gates::ry(-kPi / 2)}}, w};
  NoisyOp ev{NoisyOp::Kind::Evolve, {}, t};

  c.ops = {x_layer, ev, mid, ev, enc, ev, meas_rot};
  return c;
}

NoisyCircuit Protocol::noisy_reference_circuit(double t, const XMask& mask) const {
  check_mask(mask);
  NoisyCircuit c;
  c.n_qubits = n_qubits();
  c.hamiltonian = &ham_;
  c.measure_qubits = {center()};
  const double w = gate_window_ns_;

  NoisyOp x_layer{NoisyOp::Kind::GateLayer, x_layer_gates(mask), w};
  NoisyOp sigma_z{NoisyOp::Kind::GateLayer, {}, w};
  for (int q : z_qubits_) sigma_z.gates.emplace_back(q, gates::z());
  NoisyOp idle{NoisyOp::Kind::GateLayer, {}, w};  // the replaced-by-identity slot
  NoisyOp ev{NoisyOp::Kind::Evolve, {}, 1.5 * t};
  NoisyOp tail{NoisyOp::Kind::GateLayer, {}, w};
  for (int q : z_qubits_) tail.gates.emplace_back(q, gates::z());
  for (auto& g : x_layer_gates(mask)) tail.gates.push_back(g);

  // four gate windows + 3t of evolution, matching the sensing circuit budget
  c.ops = {x_layer, ev, sigma_z, idle, ev, tail};
  return c;
}

NoisyCircuit Protocol::noisy_otoc_circuit(double t, const XMask& mask) const {
  check_mask(mask);
  NoisyCircuit c;
  c.n_qubits = n_qubits();
  c.hamiltonian = &ham_;
  for (int q = 0; q < n_qubits(); ++q) c.measure_qubits.push_back(q);
  const double w = gate_window_ns_;

  NoisyOp x_layer{NoisyOp::Kind::GateLayer, x_layer_gates(mask), w};
  NoisyOp insert{NoisyOp::Kind::GateLayer, {}, w};
  insert.gates.emplace_back(center(), insert_unitary());
  for (int q : z_qubits_) insert.gates.emplace_back(q, gates::z());
  NoisyOp ev{NoisyOp::Kind::Evolve, {}, t};
  NoisyOp tail{NoisyOp::Kind::GateLayer, {}, w};
  for (int q : z_qubits_) tail.gates.emplace_back(q, gates::z());
  for (auto& g : x_layer_gates(mask)) tail.gates.push_back(g);

  c.ops = {x_layer, ev, insert, ev, tail};
  return c;
}

Protocol::NoisyCurve Protocol::noisy_sensing_curve(const NoiseModel& noise, double t,
                                                   std::span<const double> phis,
                                                   const XMask& mask, int n_trajectories,
                                                   std::uint64_t seed) const {
  check_mask(mask);
  validate_noise(noise, n_qubits());
  if (n_trajectories < 1) throw ValidationError("need at least one trajectory");
  const int c = center();
  const double w = gate_window_ns_;
  const int np = static_cast<int>(phis.size());

  noise_detail::PropagatorCache cache;
  cache.ham = &ham_;
  if (t > 0) {
    cache.get(std::min(t, noise.slice_ns));
    const double rem =
        t - std::floor(t / noise.slice_ns + 1e-9) * noise.slice_ns;
    if (rem > 1e-9 && t > noise.slice_ns) cache.get(rem);
  }

  std::vector<std::pair<int, Gate2>> xgates = x_layer_gates(mask);
  std::vector<std::vector<std::pair<int, Gate2>>> enc(np);
  for (int i = 0; i < np; ++i) enc[i] = encoding_layer(phis[i], mask);

  std::vector<double> values(static_cast<std::size_t>(n_trajectories) * np);
#pragma omp parallel for schedule(dynamic, 4)
  for (int traj = 0; traj < n_trajectories; ++traj) {
    auto rng = make_rng(derive_seed(seed, kStreamPrefix, traj));
    StateVector pre = StateVector::zero(n_qubits());
    for (const auto& [q, g] : xgates) kernels::apply_1q(pre.data(), pre.dim(), q, g);
    noise_detail::apply_noise_window(pre, noise, w, rng);
    noise_detail::apply_noisy_evolution(pre, noise, cache, t, rng);
    kernels::apply_1q(pre.data(), pre.dim(), c, lv_gate());
    for (int q : z_qubits_) kernels::apply_1q(pre.data(), pre.dim(), q, gates::z());
    noise_detail::apply_noise_window(pre, noise, w, rng);
    noise_detail::apply_noisy_evolution(pre, noise, cache, t, rng);
    for (int i = 0; i < np; ++i) {
      auto rng2 = make_rng(derive_seed(seed, kStreamSuffix, traj, i));
      StateVector s = pre;
      for (const auto& [q, g] : enc[i]) kernels::apply_1q(s.data(), s.dim(), q, g);
      noise_detail::apply_noise_window(s, noise, w, rng2);
      noise_detail::apply_noisy_evolution(s, noise, cache, t, rng2);
      kernels::apply_1q(s.data(), s.dim(), c, gates::ry(-kPi / 2));
      noise_detail::apply_noise_window(s, noise, w, rng2);
      values[static_cast<std::size_t>(traj) * np + i] = expect_z(s, c);
    }
  }

  NoisyCurve out;
  out.mean.resize(np);
  out.std_error.resize(np);
  std::vector<double> col(n_trajectories), sq(n_trajectories);
  for (int i = 0; i < np; ++i) {
    for (int traj = 0; traj < n_trajectories; ++traj) {
      col[traj] = values[static_cast<std::size_t>(traj) * np + i];
      sq[traj] = col[traj] * col[traj];
    }
    const double mean = pairwise_sum(col) / n_trajectories;
    double se = 0.0;
    if (n_trajectories > 1) {
      const double var =
          (pairwise_sum(sq) / n_trajectories - mean * mean) * n_trajectories /
          (n_trajectories - 1.0);
      se = std::sqrt(std::max(0.0, var) / n_trajectories);
    }
    out.mean[i] = mean;
    out.std_error[i] = se;
  }
  return out;
}

}  // namespace butterfly
