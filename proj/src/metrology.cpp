#include "butterfly/metrology.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <string>

namespace butterfly::metrology {

namespace {

constexpr double kFitWindow = 0.5;  // rad
constexpr double kSaturation = 1.0 - 1e-6;

std::size_t zero_index(const PhaseCurve& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.phis.size(); ++i)
    if (std::abs(c.phis[i]) < std::abs(c.phis[best])) best = i;
  if (std::abs(c.phis[best]) > 1e-9)
    throw ValidationError("phase grid must contain phi = 0");
  return best;
}

}  // namespace

void validate_curve(const PhaseCurve& c) {
  const std::size_t n = c.phis.size();
  if (n != c.values.size()) throw ValidationError("phase/value lengths differ");
  if (n < 5) throw ValidationError("insufficient points (need phi=0 and >= 2 per side)");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(c.phis[i + 1] > c.phis[i])) throw ValidationError("phase grid must be increasing");
  const double h = c.phis[1] - c.phis[0];
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs((c.phis[i + 1] - c.phis[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw ValidationError("phase grid must be uniform");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(c.phis[i] + c.phis[n - 1 - i]) > 1e-9)
      throw ValidationError("phase grid must be symmetric about 0");
  const std::size_t i0 = zero_index(c);
  if (i0 < 2 || i0 + 2 >= n)
    throw ValidationError("insufficient points (need >= 2 per side of phi = 0)");
}

SlopeEstimate slope_at_zero(const PhaseCurve& c) {
  validate_curve(c);
  const std::size_t i0 = zero_index(c);
  const double h = c.phis[1] - c.phis[0];

  // odd polynomial s*phi + a*phi^3 + b*phi^5 on |phi| <= 0.5 rad; widen the
  // window on coarse grids so the three coefficients stay determined
  double window = kFitWindow;
  const double needed = 3.5 * h;
  if (window < needed) window = needed;
  std::vector<std::size_t> idx;
  std::size_t per_side = 0;
  for (std::size_t i = 0; i < c.phis.size(); ++i)
    if (std::abs(c.phis[i]) <= window + 1e-12) {
      idx.push_back(i);
      if (c.phis[i] > 1e-12) ++per_side;
    }
  // drop the quintic (then cubic) term on grids too coarse to determine it
  const auto n_params = static_cast<Eigen::Index>(std::min<std::size_t>(3, per_side));
  Eigen::MatrixXd a(idx.size(), n_params);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double p = c.phis[idx[r]];
    double pw = p;
    for (Eigen::Index col = 0; col < n_params; ++col) {
      a(r, col) = pw;
      pw *= p * p;
    }
    y(r) = c.values[idx[r]];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);

  SlopeEstimate out;
  out.fit = coef(0);
  if (i0 >= 2 && i0 + 2 < c.phis.size()) {
    out.central_diff = (-c.values[i0 + 2] + 8 * c.values[i0 + 1] - 8 * c.values[i0 - 1] +
                        c.values[i0 - 2]) /
                       (12 * h);
  } else {
    out.central_diff = (c.values[i0 + 1] - c.values[i0 - 1]) / (2 * h);
  }
  const double denom = std::max(std::abs(out.fit), std::abs(out.central_diff));
  out.consistent = denom < 1e-9 || std::abs(out.fit - out.central_diff) / denom <= 0.02;
  return out;
}

FisherInfo fisher_information(const PhaseCurve& c) {
  validate_curve(c);
  const std::size_t n = c.phis.size();
  const std::size_t i0 = zero_index(c);
  const double h = c.phis[1] - c.phis[0];

  FisherInfo out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = c.values[i];
    if (std::abs(v) >= kSaturation)
      throw ValidationError("saturation guard: |<sigma_x>| >= 1 - 1e-6 at phi = " +
                            std::to_string(c.phis[i]));
    double d;
    if (i >= 2 && i + 2 < n)
      d = (-c.values[i + 2] + 8 * c.values[i + 1] - 8 * c.values[i - 1] + c.values[i - 2]) /
          (12 * h);
    else
      d = (c.values[i + 1] - c.values[i - 1]) / (2 * h);
    const double f = d * d / (1.0 - v * v);
    out.phis.push_back(c.phis[i]);
    out.pointwise.push_back(f);
    if (f > out.max_over_grid) out.max_over_grid = f;
  }

  const double v0 = c.values[i0];
  if (std::abs(v0) >= kSaturation)
    throw ValidationError("saturation guard: |<sigma_x>| >= 1 - 1e-6 at phi = 0");
  const double s = slope_at_zero(c).fit;
  out.at_zero = s * s / (1.0 - v0 * v0);
  return out;
}

double inverted_sensitivity(double f) {
  if (f < 0) throw ValidationError("Fisher information must be nonnegative");
  return std::sqrt(f);
}

double eta_inv_from_otoc(std::span<const double> otoc, int n) {
  if (static_cast<int>(otoc.size()) != n)
    throw ValidationError("need one OTOC value per qubit");
  double sum = 0.0;
  for (double o : otoc) {
    if (std::abs(o) > 1.0 + 1e-6)
      throw ValidationError("OTOC value outside [-1, 1]: " + std::to_string(o));
    sum += o;
  }
  return 0.5 * n - 0.5 * sum;
}

double PolarizationDist::mean_sz() const {
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += sz_value(static_cast<int>(k)) * p[k];
  return m;
}

PolarizationDist polarization_distribution(const StateVector& s) {
  const double nrm = s.norm();
  if (std::abs(nrm - 1.0) > 1e-6) throw ValidationError("state is not normalized");
  PolarizationDist out;
  out.n_qubits = s.n_qubits();
  out.p.assign(s.n_qubits() + 1, 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    out.p[std::popcount(i)] += std::norm(s.amplitude(i));
  return out;
}

ImTermValue expected_v_from_distribution(const PolarizationDist& dist, double phi) {
  double psum = 0.0;
  for (double v : dist.p) psum += v;
  if (std::abs(psum - 1.0) > 1e-6) throw ValidationError("distribution is not normalized");
  ImTermValue out;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    out.value += dist.p[k] * std::sin(static_cast<double>(k) * phi);
    out.derivative_at_zero += dist.p[k] * static_cast<double>(k);
  }
  return out;
}

double decomposition_residual(const StateVector& v_t_state,
                              const std::function<StateVector(const StateVector&)>& apply_v_t,
                              int lv_sign, double phi, double direct_sx) {
  // T1 = <0|V(t)|0> : the |0...0> amplitude of V(t)|0> (real for Hermitian V(t))
  const double t1 = v_t_state.amplitude(0).real();

  // T4 = <a|V(t)|a> with |a> = e^{-i phi Sz} V(t)|0>
  StateVector a = v_t_state;
  apply_phase_encoding(a, phi);
  const StateVector b = apply_v_t(a);
  const double t4 = inner(a, b).real();

  const PolarizationDist p = polarization_distribution(v_t_state);
  const double im_term = expected_v_from_distribution(p, phi).value;

  const double formula = 0.5 * (t1 + t4) - lv_sign * im_term;
  return std::abs(direct_sx - formula);
}

Bounds bounds(int n) {
  if (n < 1) throw ValidationError("need at least one qubit");
  return {std::sqrt(static_cast<double>(n)), static_cast<double>(n), n / 2.0};
}

}  // namespace butterfly::metrology
