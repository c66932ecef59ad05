#include "bochner/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "bochner/reduction.hpp"

namespace bochner::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Backend pick_default() {
  if (const char* env = std::getenv("BOCHNER_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{pick_default()};
  return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(); }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) {
    throw std::invalid_argument("avx2 backend not supported on this cpu");
  }
  backend_slot().store(b);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

double pairwise_sum(const double* v, std::size_t n) {
  if (active_backend() == Backend::avx2) {
    return detail::pairwise_sum_avx2(v, n);
  }
  return pairwise_sum_scalar(v, n);
}

double pairwise_dot(const double* v, const double* w, std::size_t n) {
  // Products are formed first, then reduced over the canonical tree, so the
  // result does not depend on the backend's fusing decisions.
  thread_local std::vector<double> scratch;
  if (scratch.size() < n) scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = v[i] * w[i];
  return pairwise_sum(scratch.data(), n);
}

namespace detail {

template <int Dim>
void nearest_update_scalar_impl(const double* const* soa, std::size_t count,
                                const double* candidate,
                                std::uint32_t candidate_index, double* best_sq,
                                double* second_sq, std::uint32_t* best_idx) {
  for (std::size_t i = 0; i < count; ++i) {
    double d = 0.0;
    for (int c = 0; c < Dim; ++c) {
      double t = soa[c][i] - candidate[c];
      d += t * t;
    }
    if (d < best_sq[i]) {
      second_sq[i] = best_sq[i];
      best_sq[i] = d;
      best_idx[i] = candidate_index;
    } else if (d < second_sq[i]) {
      second_sq[i] = d;
    }
  }
}

void nearest_update_scalar(std::size_t dim, const double* const* soa,
                           std::size_t count, const double* candidate,
                           std::uint32_t candidate_index, double* best_sq,
                           double* second_sq, std::uint32_t* best_idx) {
  switch (dim) {
    case 1:
      nearest_update_scalar_impl<1>(soa, count, candidate, candidate_index,
                                    best_sq, second_sq, best_idx);
      break;
    case 2:
      nearest_update_scalar_impl<2>(soa, count, candidate, candidate_index,
                                    best_sq, second_sq, best_idx);
      break;
    case 3:
      nearest_update_scalar_impl<3>(soa, count, candidate, candidate_index,
                                    best_sq, second_sq, best_idx);
      break;
    case 4:
      nearest_update_scalar_impl<4>(soa, count, candidate, candidate_index,
                                    best_sq, second_sq, best_idx);
      break;
    default:
      throw std::invalid_argument("dimension must be 1..4");
  }
}

}  // namespace detail

void nearest_update(std::size_t dim, const double* const* soa,
                    std::size_t count, const double* candidate,
                    std::uint32_t candidate_index, double* best_sq,
                    double* second_sq, std::uint32_t* best_idx) {
  if (active_backend() == Backend::avx2) {
    detail::nearest_update_avx2(dim, soa, count, candidate, candidate_index,
                                best_sq, second_sq, best_idx);
    return;
  }
  detail::nearest_update_scalar(dim, soa, count, candidate, candidate_index,
                                best_sq, second_sq, best_idx);
}

}  // namespace bochner::kernels
