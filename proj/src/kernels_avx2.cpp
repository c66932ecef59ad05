#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bochner/kernels.hpp"
#include "bochner/reduction.hpp"

// Compiled with -mavx2 (see CMakeLists); only reached after the dispatcher
// has confirmed CPU support.  Every routine reproduces the scalar reference
// bit for bit: sums follow the same canonical tree, comparisons keep the
// same tie behavior, and no FMA contraction is allowed to creep in.

namespace bochner::kernels::detail {

namespace {

bool is_pow2(std::size_t n) { return (n & (n - 1)) == 0; }

// One level of the canonical tree at block-of-4 granularity: writes the
// canonical sum of each 4-element block of v[0..m) into out[0..m/4).
void block4_sums(const double* v, std::size_t m, double* out) {
  for (std::size_t k = 0; k < m; k += 16) {
    __m256d v0 = _mm256_loadu_pd(v + k);
    __m256d v1 = _mm256_loadu_pd(v + k + 4);
    __m256d v2 = _mm256_loadu_pd(v + k + 8);
    __m256d v3 = _mm256_loadu_pd(v + k + 12);
    __m256d h01 = _mm256_hadd_pd(v0, v1);
    __m256d h23 = _mm256_hadd_pd(v2, v3);
    __m256d lo = _mm256_permute2f128_pd(h01, h23, 0x20);
    __m256d hi = _mm256_permute2f128_pd(h01, h23, 0x31);
    _mm256_storeu_pd(out + k / 4, _mm256_add_pd(lo, hi));
  }
}

// Power-of-two length >= 16: collapse a level at a time, then finish with
// the scalar tree, which coincides with the canonical tree on block sums.
double sum_pow2(const double* v, std::size_t m) {
  thread_local std::vector<double> scratch[2];
  int slot = 0;
  const double* cur = v;
  std::size_t len = m;
  while (len >= 16) {
    std::vector<double>& next = scratch[slot];
    if (next.size() < len / 4) next.resize(len / 4);
    block4_sums(cur, len, next.data());
    cur = next.data();
    len /= 4;
    slot ^= 1;
  }
  return pairwise_sum_scalar(cur, len);
}

}  // namespace

double pairwise_sum_avx2(const double* v, std::size_t n) {
  if (n < 16) return pairwise_sum_scalar(v, n);
  if (is_pow2(n)) return sum_pow2(v, n);
  std::size_t p = pairwise_split(n);
  return pairwise_sum_avx2(v, p) + pairwise_sum_avx2(v + p, n - p);
}

namespace {

template <int Dim>
void nearest_update_avx2_impl(const double* const* soa, std::size_t count,
                              const double* candidate,
                              std::uint32_t candidate_index, double* best_sq,
                              double* second_sq, std::uint32_t* best_idx) {
  __m256d cand[Dim];
  for (int c = 0; c < Dim; ++c) cand[c] = _mm256_set1_pd(candidate[c]);

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d t0 = _mm256_sub_pd(_mm256_loadu_pd(soa[0] + i), cand[0]);
    __m256d d = _mm256_mul_pd(t0, t0);
    for (int c = 1; c < Dim; ++c) {
      __m256d t = _mm256_sub_pd(_mm256_loadu_pd(soa[c] + i), cand[c]);
      d = _mm256_add_pd(d, _mm256_mul_pd(t, t));
    }
    __m256d best = _mm256_loadu_pd(best_sq + i);
    __m256d second = _mm256_loadu_pd(second_sq + i);
    __m256d closer = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
    __m256d new_second =
        _mm256_blendv_pd(_mm256_min_pd(d, second), best, closer);
    __m256d new_best = _mm256_blendv_pd(best, d, closer);
    _mm256_storeu_pd(best_sq + i, new_best);
    _mm256_storeu_pd(second_sq + i, new_second);
    if (int hits = _mm256_movemask_pd(closer)) {
      for (int lane = 0; lane < 4; ++lane) {
        if (hits & (1 << lane)) best_idx[i + lane] = candidate_index;
      }
    }
  }
  if (i < count) {
    const double* tail[Dim];
    for (int c = 0; c < Dim; ++c) tail[c] = soa[c] + i;
    nearest_update_scalar(Dim, tail, count - i, candidate, candidate_index,
                          best_sq + i, second_sq + i, best_idx + i);
  }
}

}  // namespace

void nearest_update_avx2(std::size_t dim, const double* const* soa,
                         std::size_t count, const double* candidate,
                         std::uint32_t candidate_index, double* best_sq,
                         double* second_sq, std::uint32_t* best_idx) {
  switch (dim) {
    case 1:
      nearest_update_avx2_impl<1>(soa, count, candidate, candidate_index,
                                  best_sq, second_sq, best_idx);
      break;
    case 2:
      nearest_update_avx2_impl<2>(soa, count, candidate, candidate_index,
                                  best_sq, second_sq, best_idx);
      break;
    case 3:
      nearest_update_avx2_impl<3>(soa, count, candidate, candidate_index,
                                  best_sq, second_sq, best_idx);
      break;
    case 4:
      nearest_update_avx2_impl<4>(soa, count, candidate, candidate_index,
                                  best_sq, second_sq, best_idx);
      break;
    default:
      throw std::invalid_argument("dimension must be 1..4");
  }
}

}  // namespace bochner::kernels::detail
