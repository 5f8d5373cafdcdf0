#pragma once

#include <cstddef>

#include "butterfly/common.hpp"
#include "butterfly/gates.hpp"

// Statevector kernels. Each kernel has a serial reference implementation and
// an OpenMP one; the dispatch layer (butterfly::kernels) picks by state size.
// Both variants are bit-identical by construction: element-wise maps perform
// the same arithmetic per amplitude, and reductions go through the fixed-block
// pairwise scheme in reduce.hpp.

namespace butterfly::kernels {

enum class Exec { Auto, Serial, Parallel };

// States with at least this many qubits take the OpenMP path under Auto.
int parallel_threshold_qubits();
void set_parallel_threshold_qubits(int n);

namespace serial {
void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g);
// exp(-i theta (XX+YY)) on the {|01>,|10>} pair subspace of (qa, qb).
void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta);
// a[i] *= phase_by_popcount[popcount(i)]
void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase_by_popcount);
double norm_sq(const cdouble* a, std::size_t dim);
double expect_z(const cdouble* a, std::size_t dim, int qubit);
double expect_x(const cdouble* a, std::size_t dim, int qubit);
double expect_sz(const cdouble* a, std::size_t dim, int n_qubits);
cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim);
}  // namespace serial

namespace par {
void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g);
void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta);
void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase_by_popcount);
double norm_sq(const cdouble* a, std::size_t dim);
double expect_z(const cdouble* a, std::size_t dim, int qubit);
double expect_x(const cdouble* a, std::size_t dim, int qubit);
double expect_sz(const cdouble* a, std::size_t dim, int n_qubits);
cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim);
}  // namespace par

// Dispatching entry points.
void apply_1q(cdouble* a, std::size_t dim, int qubit, const Gate2& g, Exec e = Exec::Auto);
void apply_xy(cdouble* a, std::size_t dim, int qa, int qb, double theta, Exec e = Exec::Auto);
void apply_popcount_phase(cdouble* a, std::size_t dim, const cdouble* phase_by_popcount,
                          Exec e = Exec::Auto);
double norm_sq(const cdouble* a, std::size_t dim, Exec e = Exec::Auto);
double expect_z(const cdouble* a, std::size_t dim, int qubit, Exec e = Exec::Auto);
double expect_x(const cdouble* a, std::size_t dim, int qubit, Exec e = Exec::Auto);
double expect_sz(const cdouble* a, std::size_t dim, int n_qubits, Exec e = Exec::Auto);
cdouble inner(const cdouble* a, const cdouble* b, std::size_t dim, Exec e = Exec::Auto);

}  // namespace butterfly::kernels
