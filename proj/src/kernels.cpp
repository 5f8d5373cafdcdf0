#include "butterfly/kernels.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "butterfly/reduce.hpp"

namespace butterfly::kernels {

namespace {

std::atomic<int> g_threshold_qubits{11};

// Index of the g-th basis state with the `qubit` bit cleared.
inline std::size_t expand1(std::size_t g, int qubit) {
  const std::size_t lo = (std::size_t{1} << qubit) - 1;
  return ((g & ~lo) << 1) | (g & lo);
}

// Index of the g-th basis state with both bit positions cleared; lo_bit < hi_bit.
inline std::size_t expand2(std::size_t g, int lo_bit, int hi_bit) {
  return expand1(expand1(g, lo_bit), hi_bit);
}

inline void pair_update(cdouble* a, std::size_t i0, std::size_t i1, const Gate2& g) {
  const cdouble a0 = a[i0], a1 = a[i1];
  a[i0] = g.m[0] * a0 + g.m[1] * a1;
  a[i1] = g.m[2] * a0 + g.m[3] * a1;
}

inline void xy_update(cdouble* a, std::size_t ia, std::size_t ib, double c, double s) {
  // ia has qubit a excited, ib has qubit b excited
  const cdouble va = a[ia], vb = a[ib];
  a[ia] = c * va - cdouble(0, s) * vb;
  a[ib] = c * vb - cdouble(0, s) * va;
}

inline double z_term(const cdouble* a, std::size_t i, int qubit) {
  const double p = std::norm(a[i]);
  return ((i >> qubit) & 1) ? -p : p;
}

inline double sz_term(const cdouble* a, std::size_t i, int n) {
  const int k = std::popcount(i);
  return 0.5 * (n - 2 * k) * std::norm(a[i]);
}

inline double x_term(const cdouble* a, std::size_t g, int qubit) {
  const std::size_t i0 = expand1(g, qubit);
  const std::size_t i1 = i0 | (std::size_t{1} << qubit);
  const cdouble t = std::conj(a[i0]) * a[i1];
  return 2.0 * t.real();
}

}  // namespace

int parallel_threshold_qubits() { return g_threshold_qubits.load(); }
void set_parallel_threshold_qubits(int n) { g_threshold_qubits.store(n); }

//===========================================================================
// serial reference implementations
//===========================================================================

namespace serial {

void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t gidx = 0; gidx < dim / 2; ++gidx) {
    const std::size_t i0 = expand1(gidx, qubit);
    pair_update(a, i0, i0 | mask, g);
  }
}

void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta) {
  const int lo = qa < qb ? qa : qb;
  const int hi = qa < qb ? qb : qa;
  const double c = std::cos(2 * theta), s = std::sin(2 * theta);
  for (std::size_t g = 0; g < dim / 4; ++g) {
    const std::size_t base = expand2(g, lo, hi);
    xy_update(a, base | (std::size_t{1} << qa), base | (std::size_t{1} << qb), c, s);
  }
}

void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase) {
  for (std::size_t i = 0; i < dim; ++i) a[i] *= phase[std::popcount(i)];
}

double norm_sq(const cdouble* a, std::size_t dim) {
  std::vector<double> partials(reduce_block_count(dim));
  for (std::size_t b = 0; b < partials.size(); ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, (b + 1) * kReduceBlock);
    for (std::size_t i = b * kReduceBlock; i < end; ++i) s += std::norm(a[i]);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_z(const cdouble* a, std::size_t dim, int qubit) {
  std::vector<double> partials(reduce_block_count(dim));
  for (std::size_t b = 0; b < partials.size(); ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, (b + 1) * kReduceBlock);
    for (std::size_t i = b * kReduceBlock; i < end; ++i) s += z_term(a, i, qubit);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_sz(const cdouble* a, std::size_t dim, int n) {
  std::vector<double> partials(reduce_block_count(dim));
  for (std::size_t b = 0; b < partials.size(); ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, (b + 1) * kReduceBlock);
    for (std::size_t i = b * kReduceBlock; i < end; ++i) s += sz_term(a, i, n);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_x(const cdouble* a, std::size_t dim, int qubit) {
  const std::size_t groups = dim / 2;
  std::vector<double> partials(reduce_block_count(groups));
  for (std::size_t b = 0; b < partials.size(); ++b) {
    double s = 0.0;
    const std::size_t end = std::min(groups, (b + 1) * kReduceBlock);
    for (std::size_t g = b * kReduceBlock; g < end; ++g) s += x_term(a, g, qubit);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim) {
  std::vector<double> pre(reduce_block_count(dim)), pim(pre.size());
  for (std::size_t blk = 0; blk < pre.size(); ++blk) {
    double sr = 0.0, si = 0.0;
    const std::size_t end = std::min(dim, (blk + 1) * kReduceBlock);
    for (std::size_t i = blk * kReduceBlock; i < end; ++i) {
      const cdouble t = std::conj(a[i]) * b[i];
      sr += t.real();
      si += t.imag();
    }
    pre[blk] = sr;
    pim[blk] = si;
  }
  return {pairwise_combine(pre), pairwise_combine(pim)};
}

}  // namespace serial

//===========================================================================
// OpenMP implementations (same per-element arithmetic, same block partials)
//===========================================================================

namespace par {

void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g) {
  const std::size_t mask = std::size_t{1} << qubit;
  const long long groups = static_cast<long long>(dim / 2);
#pragma omp parallel for schedule(static)
  for (long long gidx = 0; gidx < groups; ++gidx) {
    const std::size_t i0 = expand1(static_cast<std::size_t>(gidx), qubit);
    pair_update(a, i0, i0 | mask, g);
  }
}

void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta) {
  const int lo = qa < qb ? qa : qb;
  const int hi = qa < qb ? qb : qa;
  const double c = std::cos(2 * theta), s = std::sin(2 * theta);
  const long long groups = static_cast<long long>(dim / 4);
#pragma omp parallel for schedule(static)
  for (long long g = 0; g < groups; ++g) {
    const std::size_t base = expand2(static_cast<std::size_t>(g), lo, hi);
    xy_update(a, base | (std::size_t{1} << qa), base | (std::size_t{1} << qb), c, s);
  }
}

void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase) {
  const long long n = static_cast<long long>(dim);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) a[i] *= phase[std::popcount(static_cast<std::size_t>(i))];
}

double norm_sq(const cdouble* a, std::size_t dim) {
  std::vector<double> partials(reduce_block_count(dim));
  const long long nb = static_cast<long long>(partials.size());
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, static_cast<std::size_t>(b + 1) * kReduceBlock);
    for (std::size_t i = static_cast<std::size_t>(b) * kReduceBlock; i < end; ++i)
      s += std::norm(a[i]);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_z(const cdouble* a, std::size_t dim, int qubit) {
  std::vector<double> partials(reduce_block_count(dim));
  const long long nb = static_cast<long long>(partials.size());
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, static_cast<std::size_t>(b + 1) * kReduceBlock);
    for (std::size_t i = static_cast<std::size_t>(b) * kReduceBlock; i < end; ++i)
      s += z_term(a, i, qubit);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_sz(const cdouble* a, std::size_t dim, int n) {
  std::vector<double> partials(reduce_block_count(dim));
  const long long nb = static_cast<long long>(partials.size());
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    double s = 0.0;
    const std::size_t end = std::min(dim, static_cast<std::size_t>(b + 1) * kReduceBlock);
    for (std::size_t i = static_cast<std::size_t>(b) * kReduceBlock; i < end; ++i)
      s += sz_term(a, i, n);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

double expect_x(const cdouble* a, std::size_t dim, int qubit) {
  const std::size_t groups = dim / 2;
  std::vector<double> partials(reduce_block_count(groups));
  const long long nb = static_cast<long long>(partials.size());
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    double s = 0.0;
    const std::size_t end = std::min(groups, static_cast<std::size_t>(b + 1) * kReduceBlock);
    for (std::size_t g = static_cast<std::size_t>(b) * kReduceBlock; g < end; ++g)
      s += x_term(a, g, qubit);
    partials[b] = s;
  }
  return pairwise_combine(partials);
}

cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim) {
  std::vector<double> pre(reduce_block_count(dim)), pim(pre.size());
  const long long nb = static_cast<long long>(pre.size());
#pragma omp parallel for schedule(static)
  for (long long blk = 0; blk < nb; ++blk) {
    double sr = 0.0, si = 0.0;
    const std::size_t end = std::min(dim, static_cast<std::size_t>(blk + 1) * kReduceBlock);
    for (std::size_t i = static_cast<std::size_t>(blk) * kReduceBlock; i < end; ++i) {
      const cdouble t = std::conj(a[i]) * b[i];
      sr += t.real();
      si += t.imag();
    }
    pre[blk] = sr;
    pim[blk] = si;
  }
  return {pairwise_combine(pre), pairwise_combine(pim)};
}

}  // namespace par

//===========================================================================
// dispatch
//===========================================================================

namespace {

inline bool go_parallel(std::size_t dim, Exec e) {
  if (e == Exec::Serial) return false;
  if (e == Exec::Parallel) return true;
#ifdef _OPENMP
  return dim >= (std::size_t{1} << g_threshold_qubits.load()) && omp_get_max_threads() > 1;
#else
  return false;
#endif
}

}  // namespace

void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g, Exec e) {
  go_parallel(dim, e) ? par::apply_1q(a, dim, qubit, g) : serial::apply_1q(a, dim, qubit, g);
}
void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta, Exec e) {
  go_parallel(dim, e) ? par::apply_xy(a, dim, qa, qb, theta)
                      : serial::apply_xy(a, dim, qa, qb, theta);
}
void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase, Exec e) {
  go_parallel(dim, e) ? par::apply_popcount_phase(a, dim, phase)
                      : serial::apply_popcount_phase(a, dim, phase);
}
double norm_sq(const cdouble* a, std::size_t dim, Exec e) {
  return go_parallel(dim, e) ? par::norm_sq(a, dim) : serial::norm_sq(a, dim);
}
double expect_z(const cdouble* a, std::size_t dim, int qubit, Exec e) {
  return go_parallel(dim, e) ? par::expect_z(a, dim, qubit) : serial::expect_z(a, dim, qubit);
}
double expect_x(const cdouble* a, std::size_t dim, int qubit, Exec e) {
  return go_parallel(dim, e) ? par::expect_x(a, dim, qubit) : serial::expect_x(a, dim, qubit);
}
double expect_sz(const cdouble* a, std::size_t dim, int n, Exec e) {
  return go_parallel(dim, e) ? par::expect_sz(a, dim, n) : serial::expect_sz(a, dim, n);
}
cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim, Exec e) {
  return go_parallel(dim, e) ? par::inner(a, b, dim) : serial::inner(a, b, dim);
}

}  // namespace butterfly::kernels
