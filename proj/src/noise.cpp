#include "butterfly/noise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "butterfly/reduce.hpp"
#include "butterfly/rng.hpp"

namespace butterfly {

namespace {
constexpr std::uint64_t kStreamTrajectory = 0x7452414aULL;  // per-trajectory RNG tag
constexpr double kDurationTol = 1e-9;
}  // namespace

NoiseModel table1_noise(int n) {
  static const double t1_us[10] = {33.9, 24.5, 47.9, 37.7, 31.1, 45.2, 29.7, 39.4, 57.3, 31.1};
  static const double t2_us[10] = {12.2, 8.8, 4.5, 6.1, 4.6, 4.8, 4.0, 11.0, 3.7, 5.8};
  static const double fgg[10] = {0.959, 0.954, 0.943, 0.949, 0.938,
                                 0.959, 0.964, 0.959, 0.953, 0.954};
  static const double fee[10] = {0.939, 0.931, 0.904, 0.914, 0.915,
                                 0.910, 0.887, 0.917, 0.913, 0.886};
  if (n < 1 || n > 10)
    throw ValidationError("table1 noise preset covers 1..10 qubits, got " + std::to_string(n));
  NoiseModel m;
  for (int q = 0; q < n; ++q) {
    m.t1_ns.push_back(t1_us[q] * 1000.0);
    m.t2_ns.push_back(t2_us[q] * 1000.0);
    m.f_gg.push_back(fgg[q]);
    m.f_ee.push_back(fee[q]);
  }
  return m;
}

void validate_noise(const NoiseModel& m, int n) {
  const auto sz = static_cast<std::size_t>(n);
  if (m.t1_ns.size() != sz || m.t2_ns.size() != sz)
    throw ValidationError("noise model T1/T2 arrays must have one entry per qubit");
  if (!(m.slice_ns > 0)) throw ValidationError("noise slice width must be positive");
  if (!(m.gate_ns >= 0)) throw ValidationError("gate duration must be nonnegative");
  for (int q = 0; q < n; ++q) {
    if (!(m.t1_ns[q] > 0) || !(m.t2_ns[q] > 0))
      throw ValidationError("T1/T2 must be positive");
    if (m.t2_ns[q] > 2.0 * m.t1_ns[q] * (1.0 + 1e-12))
      throw ValidationError("T2 > 2*T1 on qubit " + std::to_string(q));
  }
  if (!m.f_gg.empty()) {
    if (m.f_gg.size() != sz || m.f_ee.size() != sz)
      throw ValidationError("readout fidelity arrays must have one entry per qubit");
    for (int q = 0; q < n; ++q)
      if (!(m.f_gg[q] > 0.5 && m.f_gg[q] <= 1.0 && m.f_ee[q] > 0.5 && m.f_ee[q] <= 1.0))
        throw ValidationError("readout fidelities must lie in (0.5, 1]");
  }
}

double damping_probability(double dt_ns, double t1_ns) {
  if (!(t1_ns > 0)) throw ValidationError("T1 must be positive");
  return -std::expm1(-dt_ns / t1_ns);
}

double dephasing_probability(double dt_ns, double t1_ns, double t2_ns) {
  if (!(t1_ns > 0) || !(t2_ns > 0)) throw ValidationError("T1/T2 must be positive");
  if (t2_ns > 2.0 * t1_ns * (1.0 + 1e-12)) throw ValidationError("T2 > 2*T1");
  double rate = 1.0 / t2_ns - 0.5 / t1_ns;  // 1/Tphi
  if (rate < 0) rate = 0;                   // T2 == 2*T1 up to rounding
  return -std::expm1(-dt_ns * rate) / 2.0;
}

//===========================================================================
// trajectory engine
//===========================================================================

namespace noise_detail {

const Eigen::MatrixXcd& PropagatorCache::get(double duration_ns) {
  auto it = by_duration.find(duration_ns);
  if (it != by_duration.end()) return it->second;
  const Spectrum& spec = ham->spectrum();
  const auto d = spec.eigenvalues.size();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases[k] = std::exp(cdouble(0, -spec.eigenvalues[k] * duration_ns));
  Eigen::MatrixXcd u =
      spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.transpose();
  return by_duration.emplace(duration_ns, std::move(u)).first->second;
}

namespace {

struct SliceRates {
  std::vector<double> gamma, pz;
};

SliceRates slice_rates(const NoiseModel& m, int n, double duration) {
  SliceRates r;
  r.gamma.resize(n);
  r.pz.resize(n);
  for (int q = 0; q < n; ++q) {
    r.gamma[q] = damping_probability(duration, m.t1_ns[q]);
    r.pz[q] = dephasing_probability(duration, m.t1_ns[q], m.t2_ns[q]);
  }
  return r;
}

// one sampled damping + dephasing step on every qubit
void apply_slice_noise(StateVector& s, const SliceRates& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  cdouble* a = s.data();
  const std::size_t dim = s.dim();
  for (int q = 0; q < s.n_qubits(); ++q) {
    const double u_damp = uni(rng);
    const double u_phase = uni(rng);
    const std::size_t mask = std::size_t{1} << q;
    if (r.gamma[q] > 0) {
      double p1 = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        if (i & mask) p1 += std::norm(a[i]);
      if (u_damp < r.gamma[q] * p1) {
        // K1: |1> -> |0>, renormalize by sqrt(p1)
        const double inv = 1.0 / std::sqrt(p1);
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & mask) {
            a[i ^ mask] = a[i] * inv;
            a[i] = 0.0;
          }
        }
      } else {
        // K0: scale |1> by sqrt(1-gamma), renormalize
        const double k = std::sqrt(1.0 - r.gamma[q]);
        const double inv = 1.0 / std::sqrt(1.0 - r.gamma[q] * p1);
        for (std::size_t i = 0; i < dim; ++i) a[i] *= (i & mask) ? k * inv : inv;
      }
    }
    if (u_phase < r.pz[q]) {
      for (std::size_t i = 0; i < dim; ++i)
        if (i & mask) a[i] = -a[i];
    }
  }
}

// window split: n_full slices of slice_ns plus a remainder
struct WindowSplit {
  long long n_full;
  double remainder;
};

WindowSplit split_window(double duration, double slice) {
  WindowSplit w;
  w.n_full = static_cast<long long>(std::floor(duration / slice + kDurationTol));
  w.remainder = duration - static_cast<double>(w.n_full) * slice;
  if (w.remainder < kDurationTol) w.remainder = 0.0;
  return w;
}

}  // namespace

void apply_noise_window(StateVector& s, const NoiseModel& m, double window_ns,
                        std::mt19937_64& rng) {
  if (window_ns <= 0) return;
  const auto w = split_window(window_ns, m.slice_ns);
  if (w.n_full > 0) {
    const SliceRates r = slice_rates(m, s.n_qubits(), m.slice_ns);
    for (long long i = 0; i < w.n_full; ++i) apply_slice_noise(s, r, rng);
  }
  if (w.remainder > 0) {
    const SliceRates r = slice_rates(m, s.n_qubits(), w.remainder);
    apply_slice_noise(s, r, rng);
  }
}

void apply_noisy_evolution(StateVector& s, const NoiseModel& m, PropagatorCache& cache,
                           double t_ns, std::mt19937_64& rng) {
  if (t_ns < 0) throw ValidationError("noisy evolution requires t >= 0 (hardware sequences)");
  if (t_ns == 0) return;
  const auto w = split_window(t_ns, m.slice_ns);
  const auto dim = static_cast<Eigen::Index>(s.dim());
  Eigen::Map<Eigen::VectorXcd> psi(s.data(), dim);
  Eigen::VectorXcd tmp(dim);
  if (w.n_full > 0) {
    const Eigen::MatrixXcd& u = cache.get(m.slice_ns);
    const SliceRates r = slice_rates(m, s.n_qubits(), m.slice_ns);
    for (long long i = 0; i < w.n_full; ++i) {
      tmp.noalias() = u * psi;
      psi = tmp;
      apply_slice_noise(s, r, rng);
    }
  }
  if (w.remainder > 0) {
    const Eigen::MatrixXcd& u = cache.get(w.remainder);
    const SliceRates r = slice_rates(m, s.n_qubits(), w.remainder);
    tmp.noalias() = u * psi;
    psi = tmp;
    apply_slice_noise(s, r, rng);
  }
}

}  // namespace noise_detail

namespace {

void validate_circuit(const NoisyCircuit& c, const NoiseModel& m) {
  if (c.n_qubits < 1) throw ValidationError("noisy circuit has no qubits");
  validate_noise(m, c.n_qubits);
  bool has_evolve = false;
  for (const auto& op : c.ops)
    if (op.kind == NoisyOp::Kind::Evolve) has_evolve = true;
  if (has_evolve && !c.hamiltonian)
    throw ValidationError("noisy circuit with evolution needs a Hamiltonian");
  if (c.measure_qubits.empty()) throw ValidationError("noisy circuit measures no qubit");
  for (int q : c.measure_qubits)
    if (q < 0 || q >= c.n_qubits) throw ValidationError("measured qubit out of range");
}

void run_one_trajectory(const NoisyCircuit& c, const NoiseModel& m,
                        noise_detail::PropagatorCache& cache, std::mt19937_64& rng,
                        std::vector<double>& out_values) {
  StateVector s = StateVector::zero(c.n_qubits);
  for (const auto& op : c.ops) {
    if (op.kind == NoisyOp::Kind::GateLayer) {
      for (const auto& [q, g] : op.gates) kernels::apply_1q(s.data(), s.dim(), q, g);
      noise_detail::apply_noise_window(s, m, op.duration_ns, rng);
    } else {
      noise_detail::apply_noisy_evolution(s, m, cache, op.duration_ns, rng);
    }
  }
  out_values.clear();
  for (int q : c.measure_qubits) out_values.push_back(expect_z(s, q));
}

}  // namespace

std::vector<TrajectoryResult> run_noisy_trajectories(const NoisyCircuit& c,
                                                     const NoiseModel& m,
                                                     const TrajectoryConfig& cfg) {
  validate_circuit(c, m);
  if (cfg.n_trajectories < 1) throw ValidationError("need at least one trajectory");
  const int nt = cfg.n_trajectories;
  const int nm = static_cast<int>(c.measure_qubits.size());

  // Propagators are built once up front so worker threads share them read-only.
  noise_detail::PropagatorCache cache;
  cache.ham = c.hamiltonian;
  if (c.hamiltonian) {
    for (const auto& op : c.ops) {
      if (op.kind != NoisyOp::Kind::Evolve || op.duration_ns <= 0) continue;
      cache.get(std::min(op.duration_ns, m.slice_ns));
      const double rem = op.duration_ns - std::floor(op.duration_ns / m.slice_ns + 1e-9) * m.slice_ns;
      if (rem > 1e-9 && op.duration_ns > m.slice_ns) cache.get(rem);
    }
  }

  std::vector<double> values(static_cast<std::size_t>(nt) * nm);
#pragma omp parallel
  {
    std::vector<double> local;
#pragma omp for schedule(dynamic, 8)
    for (int traj = 0; traj < nt; ++traj) {
      auto rng = make_rng(derive_seed(cfg.seed, kStreamTrajectory, traj));
      run_one_trajectory(c, m, cache, rng, local);
      for (int j = 0; j < nm; ++j) values[static_cast<std::size_t>(traj) * nm + j] = local[j];
    }
  }

  std::vector<TrajectoryResult> out(nm);
  std::vector<double> col(nt), sq(nt);
  for (int j = 0; j < nm; ++j) {
    for (int traj = 0; traj < nt; ++traj) {
      col[traj] = values[static_cast<std::size_t>(traj) * nm + j];
      sq[traj] = col[traj] * col[traj];
    }
    const double mean = pairwise_sum(col) / nt;
    double se = 0.0;
    if (nt > 1) {
      const double var = (pairwise_sum(sq) / nt - mean * mean) * nt / (nt - 1.0);
      se = std::sqrt(std::max(0.0, var) / nt);
    }
    out[j] = {mean, se, nt};
  }
  return out;
}

//===========================================================================
// density-matrix oracle
//===========================================================================

namespace {

void dm_apply_gate(Eigen::MatrixXcd& rho, int n, int q, const Gate2& g) {
  const auto dim = rho.rows();
  // left multiply: gate on every column
  for (Eigen::Index col = 0; col < dim; ++col)
    kernels::serial::apply_1q(rho.col(col).data(), static_cast<std::size_t>(dim), q, g);
  // right multiply by G^dag == (G rho^dag)^dag
  rho.adjointInPlace();
  for (Eigen::Index col = 0; col < dim; ++col)
    kernels::serial::apply_1q(rho.col(col).data(), static_cast<std::size_t>(dim), q, g);
  rho.adjointInPlace();
  (void)n;
}

void dm_damping(Eigen::MatrixXcd& rho, int q, double gamma) {
  if (gamma <= 0) return;
  const auto dim = rho.rows();
  const std::size_t mask = std::size_t{1} << q;
  const double k = std::sqrt(1.0 - gamma);
  Eigen::MatrixXcd out = rho;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const bool br = (static_cast<std::size_t>(r) & mask) != 0;
      const bool bc = (static_cast<std::size_t>(c) & mask) != 0;
      double f = 1.0;
      if (br) f *= k;
      if (bc) f *= k;
      out(r, c) = rho(r, c) * f;
    }
  }
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if ((static_cast<std::size_t>(r) & mask) && (static_cast<std::size_t>(c) & mask))
        out(r ^ mask, c ^ mask) += gamma * rho(r, c);
    }
  }
  rho = std::move(out);
}

void dm_dephasing(Eigen::MatrixXcd& rho, int q, double p) {
  if (p <= 0) return;
  const auto dim = rho.rows();
  const std::size_t mask = std::size_t{1} << q;
  const double f = 1.0 - 2.0 * p;  // (1-p) rho + p Z rho Z
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      if (((static_cast<std::size_t>(r) ^ static_cast<std::size_t>(c)) & mask)) rho(r, c) *= f;
}

void dm_slice_noise(Eigen::MatrixXcd& rho, const NoiseModel& m, int n, double duration) {
  for (int q = 0; q < n; ++q) {
    dm_damping(rho, q, damping_probability(duration, m.t1_ns[q]));
    dm_dephasing(rho, q, dephasing_probability(duration, m.t1_ns[q], m.t2_ns[q]));
  }
}

}  // namespace

DensityMatrix run_noisy_density(const NoisyCircuit& c, const NoiseModel& m) {
  validate_circuit(c, m);
  if (c.n_qubits > 6)
    throw ValidationError("density-matrix oracle capped at 6 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;

  noise_detail::PropagatorCache cache;
  cache.ham = c.hamiltonian;

  for (const auto& op : c.ops) {
    if (op.kind == NoisyOp::Kind::GateLayer) {
      for (const auto& [q, g] : op.gates) dm_apply_gate(rho, c.n_qubits, q, g);
      if (op.duration_ns > 0) {
        const long long full =
            static_cast<long long>(std::floor(op.duration_ns / m.slice_ns + kDurationTol));
        const double rem = op.duration_ns - full * m.slice_ns;
        for (long long i = 0; i < full; ++i) dm_slice_noise(rho, m, c.n_qubits, m.slice_ns);
        if (rem > kDurationTol) dm_slice_noise(rho, m, c.n_qubits, rem);
      }
    } else if (op.duration_ns > 0) {
      const long long full =
          static_cast<long long>(std::floor(op.duration_ns / m.slice_ns + kDurationTol));
      const double rem = op.duration_ns - full * m.slice_ns;
      for (long long i = 0; i < full; ++i) {
        const Eigen::MatrixXcd& u = cache.get(m.slice_ns);
        rho = u * rho * u.adjoint();
        dm_slice_noise(rho, m, c.n_qubits, m.slice_ns);
      }
      if (rem > kDurationTol) {
        const Eigen::MatrixXcd& u = cache.get(rem);
        rho = u * rho * u.adjoint();
        dm_slice_noise(rho, m, c.n_qubits, rem);
      }
    }
  }
  DensityMatrix out;
  out.n_qubits = c.n_qubits;
  out.mat = std::move(rho);
  return out;
}

//===========================================================================
// readout and normalization
//===========================================================================

std::array<double, 2> apply_readout_error(const std::array<double, 2>& p,
                                          const AssignmentMatrix& m) {
  return {m.f_gg * p[0] + (1.0 - m.f_ee) * p[1], (1.0 - m.f_gg) * p[0] + m.f_ee * p[1]};
}

std::array<double, 2> readout_correct(const std::array<double, 2>& p,
                                      const AssignmentMatrix& m) {
  const double det = m.f_gg + m.f_ee - 1.0;
  if (std::abs(det) < 1e-12)
    throw ValidationError("assignment matrix is singular (f_gg + f_ee = 1)");
  return {(m.f_ee * p[0] - (1.0 - m.f_ee) * p[1]) / det,
          (-(1.0 - m.f_gg) * p[0] + m.f_gg * p[1]) / det};
}

double expect_z_through_readout(double ez, const AssignmentMatrix& m) {
  const auto p = apply_readout_error({(1.0 + ez) / 2.0, (1.0 - ez) / 2.0}, m);
  return p[0] - p[1];
}

double expect_z_readout_corrected(double ez_meas, const AssignmentMatrix& m) {
  const auto p = readout_correct({(1.0 + ez_meas) / 2.0, (1.0 - ez_meas) / 2.0}, m);
  return p[0] - p[1];
}

NormalizedSignal normalize_signal(double exp_value, double ref_value) {
  NormalizedSignal out;
  if (std::abs(ref_value) <= 0.05) {
    out.dropped = true;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double r = exp_value / ref_value;
  if (std::abs(r) > 1.2) {
    out.clipped = true;
    r = r > 0 ? 1.2 : -1.2;
  }
  out.value = r;
  return out;
}

}  // namespace butterfly
