#pragma once

#include <cstddef>

namespace bochner {

// Canonical pairwise reduction tree, shared by every summation path in the
// library (vector norms, grid quadrature, kernel backends).  A range of n
// elements splits at the largest power of two strictly below n; a power of
// two splits in half.  Every backend that sums the same doubles through this
// tree produces the same bits, which is what makes the scalar and SIMD
// kernels equivalence-testable and reruns byte-identical.

constexpr std::size_t pairwise_split(std::size_t n) {
  std::size_t p = 1;
  while (p * 2 < n) p *= 2;
  return p;
}

inline double pairwise_sum_scalar(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  if (n == 2) return v[0] + v[1];
  if (n == 3) return (v[0] + v[1]) + v[2];
  if (n == 4) return (v[0] + v[1]) + (v[2] + v[3]);
  std::size_t p = pairwise_split(n);
  return pairwise_sum_scalar(v, p) + pairwise_sum_scalar(v + p, n - p);
}

}  // namespace bochner
