#include "bochner/vector_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bochner {

namespace {

std::vector<double> checked_breakpoints(std::vector<double> breaks) {
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!(breaks[i] > 0.0 && breaks[i] < 1.0)) {
      throw std::invalid_argument("breakpoints must lie strictly inside (0, 1)");
    }
    if (i > 0 && breaks[i - 1] >= breaks[i]) {
      throw std::invalid_argument("breakpoints not strictly increasing");
    }
  }
  return breaks;
}

double checked_lipschitz(double bound) {
  if (!(std::isfinite(bound) && bound >= 0.0)) {
    throw std::invalid_argument("lipschitz bound must be finite and >= 0");
  }
  return bound;
}

// Cell boundaries of a step index function, restricted to the interior.
std::vector<double> interior_breaks(const SimpleFn& s) {
  const auto& step = std::get<StepIndexFn>(s.which());
  return {step.breaks().begin() + 1, step.breaks().end() - 1};
}

std::vector<double> merge_breaks(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

VectorFn VectorFn::from_simple(SimpleFn sf) {
  VectorFn f(Class::simple, sf.space(), sf.carrier());
  f.simple_ = std::make_shared<const SimpleFn>(std::move(sf));
  return f;
}

VectorFn VectorFn::tabulated(MeasureSpace space, std::vector<Vector> values) {
  if (!is_finite_space(space)) {
    throw std::invalid_argument("tabulated functions need a finite space");
  }
  if (values.size() != as_finite(space).size()) {
    throw std::invalid_argument("length mismatch");
  }
  for (const Vector& v : values) require_same_carrier(values.front(), v);
  VectorFn f(Class::tabulated, std::move(space), values.front().carrier());
  f.table_ = std::move(values);
  return f;
}

VectorFn VectorFn::lipschitz(Carrier carrier,
                             std::function<Vector(double)> eval,
                             double lipschitz_bound,
                             std::vector<double> breakpoints) {
  VectorFn f(Class::lipschitz, IntervalSpace{}, std::move(carrier));
  f.eval_ = std::move(eval);
  f.lipschitz_ = checked_lipschitz(lipschitz_bound);
  f.breakpoints_ = checked_breakpoints(std::move(breakpoints));
  return f;
}

Vector VectorFn::operator()(const Point& x) const {
  switch (cls_) {
    case Class::simple:
      return (*simple_)(x);
    case Class::tabulated: {
      if (!x.is_atom()) throw std::invalid_argument("point kind mismatch");
      std::size_t i = x.atom_index();
      if (i >= table_.size()) throw std::invalid_argument("index out of range");
      return table_[i];
    }
    case Class::lipschitz: {
      if (x.is_atom()) throw std::invalid_argument("point kind mismatch");
      Vector v = eval_(x.coordinate());
      if (!(v.carrier() == carrier_)) {
        throw std::invalid_argument("carrier mismatch");
      }
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

const SimpleFn& VectorFn::as_simple() const {
  if (cls_ != Class::simple) throw std::invalid_argument("not a simple function");
  return *simple_;
}

const std::vector<Vector>& VectorFn::table() const {
  if (cls_ != Class::tabulated) throw std::invalid_argument("not tabulated");
  return table_;
}

double VectorFn::lipschitz_bound() const {
  if (cls_ != Class::lipschitz) throw std::invalid_argument("no lipschitz data");
  return lipschitz_;
}

const std::vector<double>& VectorFn::breakpoints() const {
  if (cls_ != Class::lipschitz) throw std::invalid_argument("no lipschitz data");
  return breakpoints_;
}

VectorFn vf_scal(double a, const VectorFn& f) {
  switch (f.cls()) {
    case VectorFn::Class::simple:
      return VectorFn::from_simple(sf_scal(a, f.as_simple()));
    case VectorFn::Class::tabulated: {
      std::vector<Vector> scaled;
      scaled.reserve(f.table().size());
      for (const Vector& v : f.table()) scaled.push_back(a * v);
      return VectorFn::tabulated(f.space(), std::move(scaled));
    }
    case VectorFn::Class::lipschitz: {
      VectorFn base = f;  // keep the evaluator alive inside the wrapper
      return VectorFn::lipschitz(
          f.carrier(),
          [a, base](double x) { return a * base(Point::coord(x)); },
          std::abs(a) * f.lipschitz_bound(), f.breakpoints());
    }
  }
  throw std::logic_error("unreachable");
}

NonNegFn NonNegFn::from_simple(SimpleFn sf) {
  if (!(sf.carrier() == Carrier::real())) {
    throw std::invalid_argument("nonnegative functions are real-valued");
  }
  for (const Vector& v : sf.values()) {
    if (v.scalar() < 0.0) throw std::domain_error("negative value");
  }
  NonNegFn f(Class::simple, sf.space());
  f.simple_ = std::make_shared<const SimpleFn>(std::move(sf));
  return f;
}

NonNegFn NonNegFn::tabulated(MeasureSpace space, std::vector<double> values) {
  if (!is_finite_space(space)) {
    throw std::invalid_argument("tabulated functions need a finite space");
  }
  if (values.size() != as_finite(space).size()) {
    throw std::invalid_argument("length mismatch");
  }
  for (double v : values) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw std::domain_error("negative value");
    }
  }
  NonNegFn f(Class::tabulated, std::move(space));
  f.table_ = std::move(values);
  return f;
}

NonNegFn NonNegFn::lipschitz(std::function<double(double)> eval,
                             double lipschitz_bound,
                             std::vector<double> breakpoints) {
  NonNegFn f(Class::lipschitz, IntervalSpace{});
  f.eval_ = std::move(eval);
  f.lipschitz_ = checked_lipschitz(lipschitz_bound);
  f.breakpoints_ = checked_breakpoints(std::move(breakpoints));
  return f;
}

double NonNegFn::operator()(const Point& x) const {
  switch (cls_) {
    case Class::simple:
      return (*simple_)(x).scalar();
    case Class::tabulated: {
      if (!x.is_atom()) throw std::invalid_argument("point kind mismatch");
      std::size_t i = x.atom_index();
      if (i >= table_.size()) throw std::invalid_argument("index out of range");
      return table_[i];
    }
    case Class::lipschitz: {
      if (x.is_atom()) throw std::invalid_argument("point kind mismatch");
      double v = eval_(x.coordinate());
      if (!std::isfinite(v)) throw std::domain_error("non-finite evaluation");
      if (v < 0.0) throw std::domain_error("negative evaluation");
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

double NonNegFn::eval_coord(double x) const {
  return (*this)(Point::coord(x));
}

const SimpleFn& NonNegFn::as_simple() const {
  if (cls_ != Class::simple) throw std::invalid_argument("not a simple function");
  return *simple_;
}

const std::vector<double>& NonNegFn::table() const {
  if (cls_ != Class::tabulated) throw std::invalid_argument("not tabulated");
  return table_;
}

double NonNegFn::lipschitz_bound() const {
  if (cls_ != Class::lipschitz) throw std::invalid_argument("no lipschitz data");
  return lipschitz_;
}

const std::vector<double>& NonNegFn::breakpoints() const {
  if (cls_ != Class::lipschitz) throw std::invalid_argument("no lipschitz data");
  return breakpoints_;
}

NonNegFn nn_scal(double a, const NonNegFn& f) {
  if (!(std::isfinite(a) && a >= 0.0)) {
    throw std::domain_error("scale must be finite and >= 0");
  }
  switch (f.cls()) {
    case NonNegFn::Class::simple:
      return NonNegFn::from_simple(sf_scal(a, f.as_simple()));
    case NonNegFn::Class::tabulated: {
      std::vector<double> scaled = f.table();
      for (double& v : scaled) v *= a;
      return NonNegFn::tabulated(f.space(), std::move(scaled));
    }
    case NonNegFn::Class::lipschitz: {
      NonNegFn base = f;
      return NonNegFn::lipschitz(
          [a, base](double x) { return a * base.eval_coord(x); },
          a * f.lipschitz_bound(), f.breakpoints());
    }
  }
  throw std::logic_error("unreachable");
}

VectorFn vf_from_nonneg(const NonNegFn& f) {
  switch (f.cls()) {
    case NonNegFn::Class::simple:
      return VectorFn::from_simple(f.as_simple());
    case NonNegFn::Class::tabulated: {
      std::vector<Vector> values;
      values.reserve(f.table().size());
      for (double v : f.table()) values.push_back(Vector::real(v));
      return VectorFn::tabulated(f.space(), std::move(values));
    }
    case NonNegFn::Class::lipschitz: {
      NonNegFn base = f;
      return VectorFn::lipschitz(
          Carrier::real(),
          [base](double x) { return Vector::real(base.eval_coord(x)); },
          f.lipschitz_bound(), f.breakpoints());
    }
  }
  throw std::logic_error("unreachable");
}

NonNegFn norm_fn(const VectorFn& f) {
  switch (f.cls()) {
    case VectorFn::Class::simple:
      return NonNegFn::from_simple(sf_norm(f.as_simple()));
    case VectorFn::Class::tabulated: {
      std::vector<double> norms;
      norms.reserve(f.table().size());
      for (const Vector& v : f.table()) norms.push_back(norm(v));
      return NonNegFn::tabulated(f.space(), std::move(norms));
    }
    case VectorFn::Class::lipschitz: {
      VectorFn base = f;
      return NonNegFn::lipschitz(
          [base](double x) { return norm(base(Point::coord(x))); },
          f.lipschitz_bound(), f.breakpoints());
    }
  }
  throw std::logic_error("unreachable");
}

NonNegFn residual_norm_fn(const VectorFn& f, const SimpleFn& s) {
  if (!(f.space() == s.space())) throw std::invalid_argument("space mismatch");
  if (!(f.carrier() == s.carrier())) {
    throw std::invalid_argument("carrier mismatch");
  }
  switch (f.cls()) {
    case VectorFn::Class::simple:
      return NonNegFn::from_simple(sf_norm(sf_minus(f.as_simple(), s)));
    case VectorFn::Class::tabulated: {
      std::vector<double> norms;
      norms.reserve(f.table().size());
      for (std::size_t i = 0; i < f.table().size(); ++i) {
        norms.push_back(norm(f.table()[i] - s(Point::atom(i))));
      }
      return NonNegFn::tabulated(f.space(), std::move(norms));
    }
    case VectorFn::Class::lipschitz: {
      VectorFn base = f;
      auto step = std::make_shared<const SimpleFn>(s);
      return NonNegFn::lipschitz(
          [base, step](double x) {
            Point p = Point::coord(x);
            return norm(base(p) - (*step)(p));
          },
          f.lipschitz_bound(),
          merge_breaks(f.breakpoints(), interior_breaks(s)));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace bochner
