#pragma once

#include <cmath>
#include <stdexcept>

namespace bochner {

// Nonnegative extended real, the value domain of measures: a finite non-NaN
// payload >= 0, or a distinct infinity above every finite value.
//
// Two conventions matter downstream and are easy to miss:
//   * 0 * infinity == infinity * 0 == 0
//   * to_real(infinity) == 0
// The second one is what lets the integral of a simple function ignore an
// infinite-measure last part: that part carries the zero vector, and
// to_real(inf) * 0 contributes nothing.
class ExtReal {
 public:
  ExtReal() = default;  // zero

  // Accepts finite x >= 0, or +inf (mapped to the infinity element).
  // NaN and negatives are rejected here so invariants stay checkable.
  explicit ExtReal(double x) : v_(x) {
    if (std::isnan(x)) throw std::invalid_argument("ExtReal: NaN payload");
    if (x < 0.0) throw std::invalid_argument("ExtReal: negative payload");
  }

  static ExtReal infinity() {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return !is_finite(); }

  // Projection to the reals: finite payload, or 0 for infinity.
  double to_real() const { return is_finite() ? v_ : 0.0; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    double s = a.v_ + b.v_;
    if (!std::isfinite(s)) return infinity();  // payload overflow saturates
    return ExtReal(s);
  }

  friend ExtReal operator*(ExtReal a, ExtReal b) {
    if (a.v_ == 0.0 || b.v_ == 0.0) return ExtReal(0.0);
    if (a.is_infinite() || b.is_infinite()) return infinity();
    double p = a.v_ * b.v_;
    if (!std::isfinite(p)) return infinity();
    return ExtReal(p);
  }

  ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return !(a == b); }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }

 private:
  double v_ = 0.0;  // >= 0 and finite, or +inf
};

}  // namespace bochner
