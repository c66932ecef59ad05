#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "bochner/simple_fn.hpp"

namespace bochner {

// A pointwise function together with the structural facts integration
// needs.  Three description classes are supported:
//   * simple: wraps a SimpleFn record;
//   * tabulated: one value per atom of a finite space;
//   * lipschitz: an evaluator on [0, 1), a Lipschitz bound valid between
//     the declared interior breakpoints, and those breakpoints.
// Certified bounds only ever use the declared structure, so a wrong
// Lipschitz bound makes results wrong, not crashes; evaluations are
// validated (finite, right carrier) as they happen.
class VectorFn {
 public:
  enum class Class { simple, tabulated, lipschitz };

  static VectorFn from_simple(SimpleFn sf);
  static VectorFn tabulated(MeasureSpace space, std::vector<Vector> values);
  static VectorFn lipschitz(Carrier carrier,
                            std::function<Vector(double)> eval,
                            double lipschitz_bound,
                            std::vector<double> breakpoints = {});

  Class cls() const { return cls_; }
  const MeasureSpace& space() const { return space_; }
  const Carrier& carrier() const { return carrier_; }

  Vector operator()(const Point& x) const;

  const SimpleFn& as_simple() const;
  const std::vector<Vector>& table() const;
  double lipschitz_bound() const;
  const std::vector<double>& breakpoints() const;

 private:
  VectorFn(Class cls, MeasureSpace space, Carrier carrier)
      : cls_(cls), space_(std::move(space)), carrier_(std::move(carrier)) {}

  Class cls_;
  MeasureSpace space_;
  Carrier carrier_;
  std::shared_ptr<const SimpleFn> simple_;
  std::vector<Vector> table_;
  std::function<Vector(double)> eval_;
  double lipschitz_ = 0.0;
  std::vector<double> breakpoints_;
};

VectorFn vf_scal(double a, const VectorFn& f);

// Nonnegative scalar functions, the integrands of the lower integral.  Same
// three classes; evaluations must be finite and >= 0.
class NonNegFn {
 public:
  enum class Class { simple, tabulated, lipschitz };

  static NonNegFn from_simple(SimpleFn sf);  // real carrier, values >= 0
  static NonNegFn tabulated(MeasureSpace space, std::vector<double> values);
  static NonNegFn lipschitz(std::function<double(double)> eval,
                            double lipschitz_bound,
                            std::vector<double> breakpoints = {});

  Class cls() const { return cls_; }
  const MeasureSpace& space() const { return space_; }
  double operator()(const Point& x) const;
  double eval_coord(double x) const;

  const SimpleFn& as_simple() const;
  const std::vector<double>& table() const;
  double lipschitz_bound() const;
  const std::vector<double>& breakpoints() const;

 private:
  NonNegFn(Class cls, MeasureSpace space)
      : cls_(cls), space_(std::move(space)) {}

  Class cls_;
  MeasureSpace space_;
  std::shared_ptr<const SimpleFn> simple_;
  std::vector<double> table_;
  std::function<double(double)> eval_;
  double lipschitz_ = 0.0;
  std::vector<double> breakpoints_;
};

NonNegFn nn_scal(double a, const NonNegFn& f);  // a >= 0

// The same function viewed as a real-carrier vector function.
VectorFn vf_from_nonneg(const NonNegFn& f);

// x -> norm(f(x)); keeps f's Lipschitz bound and breakpoints, since norms
// contract distances.
NonNegFn norm_fn(const VectorFn& f);

// x -> norm(f(x) - s(x)); s is constant between its own cell boundaries, so
// those join the breakpoint list.
NonNegFn residual_norm_fn(const VectorFn& f, const SimpleFn& s);

}  // namespace bochner
