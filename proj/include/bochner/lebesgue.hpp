#pragma once

#include "bochner/vector_fn.hpp"

namespace bochner {

// Exact integral of a nonnegative real-valued simple function: the sum over
// slots of measure times value, in slot order.  Infinite measure under a
// zero value contributes zero; under a positive value it makes the result
// infinite.  Never an approximation.
ExtReal lint_p_simple(const SimpleFn& f);

// Certified enclosure of an integral computed from a truncated minorant:
// value <= true integral <= value + error_bound, with both sides justified
// by declared structure only.  truncated reports whether the height cap
// (equal to `depth`) was ever active; its effect is already inside
// error_bound.
struct LintResult {
  ExtReal value;
  double error_bound = 0.0;
  bool truncated = false;
  int depth = 0;
};

// Lower integral.  Exact (error_bound 0) on finite spaces and on simple
// integrands.  On Lipschitz interval integrands it evaluates the dyadic
// truncation of f at depth `depth` on the dyadic grid joined with f's
// breakpoints, lower-bounding each cell through the Lipschitz bound; the
// result is nondecreasing in depth.
LintResult lint_p(const NonNegFn& f, int depth);

// Measure of a set certified to lie inside {x : f(x) >= t}.  Exact on
// finite spaces and simple integrands; on Lipschitz integrands a cell
// counts only when the Lipschitz bound proves it.  Together with lint_p
// this gives a checkable Markov inequality:
//   t * superlevel_measure(f, t, d) <= lint_p(f, d).value + error_bound.
ExtReal superlevel_measure(const NonNegFn& f, double t, int depth);

}  // namespace bochner
