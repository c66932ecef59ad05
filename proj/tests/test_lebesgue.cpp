#include <doctest.h>

#include <cmath>

#include "bochner/lebesgue.hpp"

using namespace bochner;

namespace {

MeasureSpace weighted() {
  return FiniteSpace({ExtReal(1.0), ExtReal(0.5), ExtReal(2.0)});
}

SimpleFn real_sf(MeasureSpace sp, std::vector<std::size_t> table,
                 std::vector<double> vals) {
  std::vector<Vector> values;
  for (double v : vals) values.push_back(Vector::real(v));
  return SimpleFn(std::move(sp), IndexTable(std::move(table)),
                  std::move(values));
}

}  // namespace

TEST_SUITE("lebesgue") {

TEST_CASE("simple integral is an exact weighted sum") {
  SimpleFn f = real_sf(weighted(), {0, 1, 0}, {2.0, 3.0, 0.0});
  // 2*(1+2) + 3*0.5, summed slot by slot.
  CHECK(lint_p_simple(f) == ExtReal(7.5));

  SimpleFn zero = real_sf(weighted(), {0, 0, 0}, {0.0});
  CHECK(lint_p_simple(zero) == ExtReal(0.0));

  SimpleFn neg = real_sf(weighted(), {0, 1, 1}, {-1.0, 0.0});
  CHECK_THROWS_AS(lint_p_simple(neg), std::domain_error);

  SimpleFn vec(weighted(), IndexTable({0, 1, 1}),
               {Vector(Carrier::rvec(2), {1.0, 0.0}),
                Vector::zero(Carrier::rvec(2))});
  CHECK_THROWS_AS(lint_p_simple(vec), std::invalid_argument);
}

TEST_CASE("infinite measure under positive value goes to infinity") {
  MeasureSpace sp = FiniteSpace({ExtReal(1.0), ExtReal::infinity()});
  SimpleFn pos = real_sf(sp, {0, 0}, {2.0, 0.0});
  CHECK(lint_p_simple(pos).is_infinite());
  // Under a zero value the infinite part contributes nothing.
  SimpleFn masked = real_sf(sp, {0, 1}, {2.0, 0.0});
  CHECK(lint_p_simple(masked) == ExtReal(2.0));

  NonNegFn f = NonNegFn::from_simple(pos);
  LintResult r = lint_p(f, 4);
  CHECK(r.value.is_infinite());
  CHECK(r.error_bound == 0.0);
}

TEST_CASE("lint is exact on the structured classes") {
  NonNegFn tab = NonNegFn::tabulated(weighted(), {2.0, 3.0, 0.25});
  LintResult rt = lint_p(tab, 6);
  CHECK(rt.value == ExtReal(2.0 * 1.0 + 3.0 * 0.5 + 0.25 * 2.0));
  CHECK(rt.error_bound == 0.0);
  CHECK_FALSE(rt.truncated);

  // Step function: 4 on [0, 0.25), 1 on [0.25, 1).
  SimpleFn step(MeasureSpace(IntervalSpace{}),
                StepIndexFn({0.0, 0.25, 1.0}, {0, 1}),
                {Vector::real(4.0), Vector::real(1.0), Vector::real(0.0)});
  LintResult rs = lint_p(NonNegFn::from_simple(step), 3);
  CHECK(rs.value == ExtReal(4.0 * 0.25 + 1.0 * 0.75));
  CHECK(rs.error_bound == 0.0);
}

TEST_CASE("lint encloses a lipschitz integral from below") {
  NonNegFn id = NonNegFn::lipschitz([](double x) { return x; }, 1.0);
  for (int depth = 2; depth <= 14; depth += 3) {
    LintResult r = lint_p(id, depth);
    double v = r.value.to_real();
    // Certified sandwich around the closed form 1/2; the lower side gets a
    // whisker for the final reduction's rounding.
    CHECK(v <= 0.5 + 1e-12);
    CHECK(v + r.error_bound >= 0.5);
    CHECK_FALSE(r.truncated);
    CHECK(r.depth == depth);
  }
  LintResult deep = lint_p(id, 14);
  CHECK(deep.value.to_real() == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(deep.error_bound < 1e-3);
}

TEST_CASE("lint is nondecreasing in depth") {
  NonNegFn f = NonNegFn::lipschitz(
      [](double x) { return std::fabs(x - 0.3) + 0.5 * x; }, 1.5, {0.3});
  double prev = 0.0;
  for (int depth = 1; depth <= 16; ++depth) {
    double v = lint_p(f, depth).value.to_real();
    // Monotone up to reduction-order rounding, which the guard terms absorb
    // in the certified bound but not in the raw value.
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("truncation reports the height cap and still encloses") {
  // The staircase is capped at height == depth, so 5 is cut off at depth 3
  // but clears the cap at depth 6.
  NonNegFn tall = NonNegFn::lipschitz([](double) { return 5.0; }, 0.0);
  LintResult low = lint_p(tall, 3);
  CHECK(low.truncated);
  CHECK(low.value.to_real() <= 5.0);
  CHECK(low.value.to_real() + low.error_bound >= 5.0);
  LintResult high = lint_p(tall, 6);
  CHECK_FALSE(high.truncated);
  CHECK(high.value.to_real() + high.error_bound >= 5.0);
  CHECK(high.value.to_real() <= 5.0 + 1e-12);
  // The staircase reaches to within one level step of the constant.
  CHECK(high.value.to_real() >= 5.0 - 1.0 / 64.0 - 1e-12);
}

TEST_CASE("depth is validated") {
  NonNegFn id = NonNegFn::lipschitz([](double x) { return x; }, 1.0);
  CHECK_THROWS_AS(lint_p(id, 0), std::invalid_argument);
  CHECK_THROWS_AS(lint_p(id, 27), std::invalid_argument);
}

TEST_CASE("superlevel measure certifies a markov inequality") {
  NonNegFn id = NonNegFn::lipschitz([](double x) { return x; }, 1.0);
  for (double t : {0.2, 0.5, 0.8}) {
    ExtReal m = superlevel_measure(id, t, 10);
    // Certified subset of {x >= t}, so its size is at most 1 - t.
    CHECK(m.to_real() <= 1.0 - t);
    CHECK(m.to_real() >= 1.0 - t - 1e-2);
    LintResult r = lint_p(id, 10);
    CHECK(t * m.to_real() <= r.value.to_real() + r.error_bound);
  }

  NonNegFn tab = NonNegFn::tabulated(weighted(), {2.0, 0.1, 1.0});
  CHECK(superlevel_measure(tab, 1.0, 4) == ExtReal(3.0));
  CHECK(superlevel_measure(tab, 0.05, 4) == ExtReal(3.5));
  CHECK(superlevel_measure(tab, 5.0, 4) == ExtReal(0.0));

  SimpleFn step(MeasureSpace(IntervalSpace{}),
                StepIndexFn({0.0, 0.25, 1.0}, {0, 1}),
                {Vector::real(4.0), Vector::real(1.0), Vector::real(0.0)});
  CHECK(superlevel_measure(NonNegFn::from_simple(step), 2.0, 4) ==
        ExtReal(0.25));
}

}  // TEST_SUITE
