#include "bochner/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bochner/kernels.hpp"

namespace bochner {

namespace {

// Absolute slack absorbing evaluator rounding and the inexact midpoint, so
// per-cell bounds stay certified despite floating-point evaluation.
constexpr double kEvalGuard = 1e-14;

void check_depth(int depth) {
  if (depth < 1 || depth > 26) {
    throw std::invalid_argument("depth must be in [1, 26]");
  }
}

// Dyadic grid at the given depth joined with the declared breakpoints;
// points closer than the minimum width collapse onto the earlier one.
std::vector<double> grid_with_breaks(const std::vector<double>& breaks,
                                     int depth) {
  std::size_t cells = std::size_t{1} << depth;
  double h = std::ldexp(1.0, -depth);
  std::vector<double> dyadic(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) dyadic[k] = double(k) * h;
  std::vector<double> merged;
  merged.reserve(dyadic.size() + breaks.size());
  std::merge(dyadic.begin(), dyadic.end(), breaks.begin(), breaks.end(),
             std::back_inserter(merged));
  std::vector<double> grid{0.0};
  for (double t : merged) {
    if (t - grid.back() < kMinWidth) continue;
    if (1.0 - t < kMinWidth && t != 1.0) continue;
    grid.push_back(t);
  }
  return grid;
}

ExtReal finite_space_sum(const FiniteSpace& fs, const NonNegFn& f) {
  ExtReal total(0.0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    total += fs.mass(i) * ExtReal(f(Point::atom(i)));
  }
  return total;
}

}  // namespace

ExtReal lint_p_simple(const SimpleFn& f) {
  if (!(f.carrier() == Carrier::real())) {
    throw std::invalid_argument("integrand must be real-valued");
  }
  std::vector<ExtReal> measures = sf_part_measures(f);
  ExtReal total(0.0);
  for (std::size_t n = 0; n <= f.max_which(); ++n) {
    double v = f.value(n).scalar();
    if (v < 0.0) throw std::domain_error("negative value");
    total += measures[n] * ExtReal(v);
  }
  return total;
}

LintResult lint_p(const NonNegFn& f, int depth) {
  check_depth(depth);
  if (f.cls() == NonNegFn::Class::simple) {
    return {lint_p_simple(f.as_simple()), 0.0, false, depth};
  }
  if (f.cls() == NonNegFn::Class::tabulated) {
    return {finite_space_sum(as_finite(f.space()), f), 0.0, false, depth};
  }

  const double L = f.lipschitz_bound();
  const double cap = double(depth);
  const double pow2d = std::ldexp(1.0, depth);
  const double h = std::ldexp(1.0, -depth);
  std::vector<double> grid = grid_with_breaks(f.breakpoints(), depth);

  std::vector<double> widths(grid.size() - 1);
  std::vector<double> psi(grid.size() - 1);
  bool truncated = false;
  double capped_width = 0.0;
  double cap_excess = 0.0;
  for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
    double w = grid[c + 1] - grid[c];
    double v = f.eval_coord(grid[c] + 0.5 * w);
    double m = v - L * (0.5 * w) - kEvalGuard;
    if (m < 0.0) m = 0.0;
    double t = std::floor(m * pow2d) / pow2d;
    if (t > cap) {
      truncated = true;
      capped_width += w;
      cap_excess = std::max(cap_excess, m - cap);
      t = cap;
    }
    widths[c] = w;
    psi[c] = t;
  }
  double value = kernels::pairwise_dot(psi.data(), widths.data(), psi.size());
  // Per cell of width w <= h the gap to the true integral is at most
  // w*(L*w + 2^-depth + 2*guard) plus the cap excess; widths sum to one.
  double bound =
      (1.0 + L) * h + 2.0 * kEvalGuard + cap_excess * capped_width;
  return {ExtReal(value), bound, truncated, depth};
}

ExtReal superlevel_measure(const NonNegFn& f, double t, int depth) {
  check_depth(depth);
  if (!(std::isfinite(t))) throw std::invalid_argument("threshold not finite");
  if (f.cls() == NonNegFn::Class::tabulated) {
    const FiniteSpace& fs = as_finite(f.space());
    ExtReal total(0.0);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (f(Point::atom(i)) >= t) total += fs.mass(i);
    }
    return total;
  }
  if (f.cls() == NonNegFn::Class::simple) {
    const SimpleFn& s = f.as_simple();
    std::vector<ExtReal> measures = sf_part_measures(s);
    ExtReal total(0.0);
    for (std::size_t n = 0; n <= s.max_which(); ++n) {
      if (s.value(n).scalar() >= t) total += measures[n];
    }
    return total;
  }

  const double L = f.lipschitz_bound();
  std::vector<double> grid = grid_with_breaks(f.breakpoints(), depth);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
    double w = grid[c + 1] - grid[c];
    double v = f.eval_coord(grid[c] + 0.5 * w);
    if (v - L * (0.5 * w) - kEvalGuard >= t) total += w;
  }
  return ExtReal(total);
}

}  // namespace bochner
