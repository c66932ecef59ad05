#pragma once

#include <cstddef>
#include <cstdint>

namespace bochner::kernels {

// Two implementations of the hot loops: a scalar reference and an AVX2
// variant.  Both follow the same canonical pairwise reduction tree and the
// same comparison order, so their outputs are bit-identical; an equivalence
// test suite holds them to that.  Selection happens once at startup from
// CPU capabilities; the BOCHNER_KERNELS environment variable ("scalar" or
// "avx2") overrides it.

enum class Backend { scalar, avx2 };

Backend active_backend();
void force_backend(Backend b);  // for tests; throws if unsupported
bool avx2_supported();
const char* backend_name(Backend b);

// Sum of v[0..n) over the canonical pairwise tree.
double pairwise_sum(const double* v, std::size_t n);

// Sum of v[i]*w[i] over the same tree applied to the products.
double pairwise_dot(const double* v, const double* w, std::size_t n);

// One step of nearest-candidate classification.  Points live in dimension
// dim (1..4), coordinate c of point i at soa[c][i].  For each point, the
// squared distance to `candidate` is compared against the incumbent best:
// strictly closer replaces it (the old best demotes to second place),
// otherwise the second-best distance is updated.  Ties keep the incumbent,
// so the smallest index among minimizers always wins.
void nearest_update(std::size_t dim, const double* const* soa,
                    std::size_t count, const double* candidate,
                    std::uint32_t candidate_index, double* best_sq,
                    double* second_sq, std::uint32_t* best_idx);

namespace detail {
double pairwise_sum_avx2(const double* v, std::size_t n);
void nearest_update_avx2(std::size_t dim, const double* const* soa,
                         std::size_t count, const double* candidate,
                         std::uint32_t candidate_index, double* best_sq,
                         double* second_sq, std::uint32_t* best_idx);
void nearest_update_scalar(std::size_t dim, const double* const* soa,
                           std::size_t count, const double* candidate,
                           std::uint32_t candidate_index, double* best_sq,
                           double* second_sq, std::uint32_t* best_idx);
}  // namespace detail

}  // namespace bochner::kernels
