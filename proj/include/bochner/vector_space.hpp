#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bochner/reduction.hpp"

namespace bochner {

// Descriptor of a finite-dimensional real normed space: the reals, R^d with
// the Euclidean norm, or C carried as R^2.  All three are complete, so limits
// of Cauchy integral sequences always exist in them.
class Carrier {
 public:
  enum class Kind { real, rvec, cplx };

  static Carrier real() { return Carrier(Kind::real, 1); }
  static Carrier rvec(std::size_t d) {
    if (d == 0) throw std::invalid_argument("Carrier: rvec dimension must be positive");
    return Carrier(Kind::rvec, d);
  }
  static Carrier complex() { return Carrier(Kind::cplx, 2); }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_;
  }
  friend bool operator!=(const Carrier& a, const Carrier& b) { return !(a == b); }

  std::string name() const {
    switch (kind_) {
      case Kind::real: return "real";
      case Kind::cplx: return "complex";
      case Kind::rvec: return "rvec" + std::to_string(dim_);
    }
    return "?";
  }

 private:
  Carrier(Kind k, std::size_t d) : kind_(k), dim_(d) {}
  Kind kind_;
  std::size_t dim_;
};

// Element of a carrier: a coordinate array whose length matches the carrier
// dimension.  Coordinates are finite and non-NaN by construction.
class Vector {
 public:
  Vector() : Vector(Carrier::real(), {0.0}) {}  // real zero

  Vector(Carrier carrier, std::vector<double> coords)
      : carrier_(carrier), coords_(std::move(coords)) {
    if (coords_.size() != carrier_.dim())
      throw std::invalid_argument("Vector: coordinate count does not match carrier");
    for (double c : coords_)
      if (!std::isfinite(c)) throw std::invalid_argument("Vector: non-finite coordinate");
  }

  static Vector zero(Carrier carrier) {
    return Vector(carrier, std::vector<double>(carrier.dim(), 0.0));
  }
  static Vector real(double x) { return Vector(Carrier::real(), {x}); }

  const Carrier& carrier() const { return carrier_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool is_zero() const {
    for (double c : coords_)
      if (c != 0.0) return false;
    return true;
  }

  // Scalar payload of a real-carrier vector.
  double scalar() const {
    if (carrier_.kind() != Carrier::Kind::real)
      throw std::invalid_argument("Vector: scalar() needs the real carrier");
    return coords_[0];
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.carrier_ == b.carrier_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const Vector& a, const Vector& b) { return !(a == b); }

 private:
  Carrier carrier_;
  std::vector<double> coords_;
};

inline void require_same_carrier(const Vector& u, const Vector& v) {
  if (u.carrier() != v.carrier())
    throw std::invalid_argument("carrier mismatch: " + u.carrier().name() + " vs " +
                                v.carrier().name());
}

inline Vector operator+(const Vector& u, const Vector& v) {
  require_same_carrier(u, v);
  std::vector<double> c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = u[i] + v[i];
  return Vector(u.carrier(), std::move(c));
}

inline Vector operator-(const Vector& u) {
  std::vector<double> c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -u[i];
  return Vector(u.carrier(), std::move(c));
}

inline Vector operator-(const Vector& u, const Vector& v) { return u + (-v); }

inline Vector operator*(double a, const Vector& u) {
  std::vector<double> c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a * u[i];
  return Vector(u.carrier(), std::move(c));
}

// Squared Euclidean norm through the canonical reduction tree, so that the
// comparison a selection kernel made and the comparison a test re-makes see
// exactly the same doubles.
inline double norm_sq(const Vector& u) {
  double sq[8];
  const std::size_t d = u.dim();
  if (d <= 8) {
    for (std::size_t i = 0; i < d; ++i) sq[i] = u[i] * u[i];
    return pairwise_sum_scalar(sq, d);
  }
  std::vector<double> big(d);
  for (std::size_t i = 0; i < d; ++i) big[i] = u[i] * u[i];
  return pairwise_sum_scalar(big.data(), d);
}

inline double norm(const Vector& u) { return std::sqrt(norm_sq(u)); }

inline double distance(const Vector& u, const Vector& v) { return norm(u - v); }

}  // namespace bochner
