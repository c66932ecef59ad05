#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "bochner/vector_space.hpp"

namespace bochner {

using VectorSeq = std::function<Vector(std::size_t)>;

// The limit and Cauchy predicates below are finite-window surrogates of the
// epsilon-N definitions: they decide what was actually sampled, and every
// window parameter is explicit so results can be reported honestly.

// True iff norm(u(n) - l) < eps for every n in [start, start + window].
bool seq_limit_check(const VectorSeq& u, const Vector& limit, double eps,
                     std::size_t start, std::size_t window = 100);

// True iff norm(u(p) - u(q)) < eps for all p, q in [start, start + window].
bool cauchy_check(const VectorSeq& u, double eps, std::size_t start,
                  std::size_t window);

struct NoConvergence : std::runtime_error {
  NoConvergence(std::string msg, double diameter)
      : std::runtime_error(std::move(msg)), last_diameter(diameter) {}
  double last_diameter;
};

struct LimitEstimate {
  Vector value;
  std::size_t stabilized_at;  // first sampled index whose window was Cauchy
  double eps;
  std::size_t window;
  std::size_t stride;
};

// Walks candidate start indices (an arithmetic progression of step `stride`,
// so slowly drifting sequences are probed across a wide span) and returns the
// first term whose sampled window is Cauchy at eps.  Terms are evaluated at
// most once.  Samples past max_n clip to max_n; a window must still compare
// at least two distinct indices to count.  Throws NoConvergence, carrying
// the last observed window diameter, when no candidate at or below max_n
// qualifies.  window must be at least 1.
LimitEstimate seq_limit_estimate(const VectorSeq& u, double eps,
                                 std::size_t max_n, std::size_t window = 100,
                                 std::size_t stride = 1);

}  // namespace bochner
