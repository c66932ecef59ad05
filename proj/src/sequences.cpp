#include "bochner/sequences.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace bochner {

bool seq_limit_check(const VectorSeq& u, const Vector& limit, double eps,
                     std::size_t start, std::size_t window) {
  for (std::size_t n = start; n <= start + window; ++n) {
    if (distance(u(n), limit) >= eps) return false;
  }
  return true;
}

bool cauchy_check(const VectorSeq& u, double eps, std::size_t start,
                  std::size_t window) {
  std::vector<Vector> terms;
  terms.reserve(window + 1);
  for (std::size_t n = start; n <= start + window; ++n) terms.push_back(u(n));
  for (std::size_t a = 0; a + 1 < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (distance(terms[a], terms[b]) >= eps) return false;
    }
  }
  return true;
}

LimitEstimate seq_limit_estimate(const VectorSeq& u, double eps,
                                 std::size_t max_n, std::size_t window,
                                 std::size_t stride) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  if (window == 0) throw std::invalid_argument("window must be positive");
  if (stride == 0) stride = 1;

  std::unordered_map<std::size_t, Vector> cache;
  auto term = [&](std::size_t n) -> const Vector& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, u(n)).first;
    return it->second;
  };

  double last_diameter = 0.0;
  std::size_t start = 0;
  while (start <= max_n) {
    // Sample indices start + k*stride, clipped at max_n; a violating pair
    // rules out every window that still contains its earlier element.
    std::size_t indices[2] = {0, 0};
    bool violated = false;
    bool examined = false;
    double diameter = 0.0;
    for (std::size_t ka = 0; ka <= window && !violated; ++ka) {
      std::size_t a = std::min(start + ka * stride, max_n);
      for (std::size_t kb = ka + 1; kb <= window; ++kb) {
        std::size_t b = std::min(start + kb * stride, max_n);
        if (b == a) continue;
        examined = true;
        double d = distance(term(a), term(b));
        diameter = std::max(diameter, d);
        if (d >= eps) {
          violated = true;
          indices[0] = ka;
          indices[1] = kb;
          break;
        }
      }
    }
    if (!violated) {
      // A window clipped down to a single index certifies nothing; once
      // that happens every later window is degenerate too.
      if (!examined) break;
      return LimitEstimate{term(start), start, eps, window, stride};
    }
    last_diameter = diameter;
    start += (indices[0] + 1) * stride;
  }
  throw NoConvergence("no convergence detected", last_diameter);
}

}  // namespace bochner
