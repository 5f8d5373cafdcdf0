#pragma once

#include <cstddef>
#include <vector>

namespace butterfly {

// Deterministic reductions. Sums are evaluated as fixed 1024-element block
// partials combined by a fixed-order pairwise tree, so the result is
// bit-identical whether the block partials were produced serially or by any
// number of OpenMP threads.
inline constexpr std::size_t kReduceBlock = 1024;

inline std::size_t reduce_block_count(std::size_t n) {
  return (n + kReduceBlock - 1) / kReduceBlock;
}

// Destructive fixed-order pairwise combine of block partials.
inline double pairwise_combine(std::vector<double>& partials) {
  if (partials.empty()) return 0.0;
  std::size_t n = partials.size();
  while (n > 1) {
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) partials[i] += partials[i + half];
    n = half;
  }
  return partials[0];
}

// Pairwise sum of an arbitrary value sequence (used for trajectory means).
inline double pairwise_sum(const std::vector<double>& values) {
  std::vector<double> partials;
  partials.reserve(reduce_block_count(values.size()));
  for (std::size_t b = 0; b < values.size(); b += kReduceBlock) {
    double s = 0.0;
    const std::size_t end = std::min(values.size(), b + kReduceBlock);
    for (std::size_t i = b; i < end; ++i) s += values[i];
    partials.push_back(s);
  }
  return pairwise_combine(partials);
}

}  // namespace butterfly
