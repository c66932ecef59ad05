#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "bochner/extended_real.hpp"

namespace bochner {

// Narrower pieces would be indistinguishable from rounding noise in the
// arithmetic on breakpoints, so they are rejected at construction.
inline constexpr double kMinWidth = 1e-12;

// A point of either space family: an atom index, or a coordinate in [0, 1).
class Point {
 public:
  static Point atom(std::size_t i) { return Point(i); }
  static Point coord(double x);

  bool is_atom() const { return v_.index() == 0; }
  std::size_t atom_index() const { return std::get<0>(v_); }
  double coordinate() const { return std::get<1>(v_); }

 private:
  explicit Point(std::size_t i) : v_(i) {}
  explicit Point(double x) : v_(x) {}
  std::variant<std::size_t, double> v_;
};

// Finitely many atoms 0..n-1, each carrying a nonnegative (possibly
// infinite) mass.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<ExtReal> masses);

  std::size_t size() const { return masses_.size(); }
  const ExtReal& mass(std::size_t i) const;
  ExtReal total_mass() const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.masses_ == b.masses_;
  }

 private:
  std::vector<ExtReal> masses_;
};

// The unit interval [0, 1) with Lebesgue measure.
class IntervalSpace {
 public:
  friend bool operator==(const IntervalSpace&, const IntervalSpace&) {
    return true;
  }
};

using MeasureSpace = std::variant<FiniteSpace, IntervalSpace>;

inline bool is_finite_space(const MeasureSpace& s) {
  return std::holds_alternative<FiniteSpace>(s);
}
const FiniteSpace& as_finite(const MeasureSpace& s);

// --- Measurable sets -------------------------------------------------------
//
// Set equality throughout is syntactic: interval pieces compare by exact
// endpoint values.  Construction normalizes enough (sorting is required of
// the caller, touching pieces are merged) that equal sets produced by the
// library compare equal.

// Subset of a finite space's atoms, stored as strictly increasing indices.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<std::size_t> indices);

  bool contains(std::size_t i) const;
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const { return indices_; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.indices_ == b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

struct HalfOpen {
  double lo;
  double hi;
  friend bool operator==(const HalfOpen& a, const HalfOpen& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Finite union of disjoint half-open pieces [lo, hi) inside [0, 1], kept
// sorted; pieces that touch exactly are merged so the representation is
// canonical for a given union.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<HalfOpen> pieces);

  bool contains(double x) const;
  double total_length() const;
  bool empty() const { return pieces_.empty(); }
  const std::vector<HalfOpen>& pieces() const { return pieces_; }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  std::vector<HalfOpen> pieces_;
};

using MSet = std::variant<PointSet, IntervalSet>;

// Disjoint union; measure_of distributes over it (tested, not assumed).
MSet mset_union(const MSet& a, const MSet& b);

ExtReal measure_of(const MeasureSpace& space, const MSet& s);

// --- Index functions -------------------------------------------------------
//
// An index function assigns a slot number to every point of the space; it is
// the `which` component of a simple function.  Both forms are measurable by
// construction: preimages are computed, never decided.

// Per-atom slot assignment on a finite space.
class IndexTable {
 public:
  explicit IndexTable(std::vector<std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  std::size_t at(std::size_t i) const;
  std::size_t max_index() const;
  const std::vector<std::size_t>& indices() const { return indices_; }

  friend bool operator==(const IndexTable& a, const IndexTable& b) {
    return a.indices_ == b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

// Piecewise-constant slot assignment on [0, 1): cell [breaks[i], breaks[i+1])
// carries indices[i].  Breakpoints are strictly increasing from 0 to 1.
// Adjacent cells with equal indices are allowed; normalized() merges them.
class StepIndexFn {
 public:
  StepIndexFn(std::vector<double> breaks, std::vector<std::size_t> indices);

  std::size_t cell_count() const { return indices_.size(); }
  std::size_t at(double x) const;
  std::size_t cell_index(std::size_t cell) const { return indices_[cell]; }
  double cell_width(std::size_t cell) const {
    return breaks_[cell + 1] - breaks_[cell];
  }
  std::size_t max_index() const;
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::size_t>& indices() const { return indices_; }

  // Syntactic, like set equality: same breakpoints, same slots.
  friend bool operator==(const StepIndexFn& a, const StepIndexFn& b) {
    return a.breaks_ == b.breaks_ && a.indices_ == b.indices_;
  }

  StepIndexFn normalized() const;

 private:
  std::vector<double> breaks_;
  std::vector<std::size_t> indices_;
};

using IndexFn = std::variant<IndexTable, StepIndexFn>;

// Largest index value the function can return (0 for an empty table).
std::size_t index_fn_max(const IndexFn& w);
std::size_t index_fn_at(const IndexFn& w, const Point& x);
void require_index_fn_matches(const MeasureSpace& space, const IndexFn& w);

MSet preimage(const MeasureSpace& space, const IndexFn& w, std::size_t n);

// --- Product-partition pairing ---------------------------------------------
//
// Joint refinement of two index functions with maximal indices na and nb
// maps a pair (i, j) to the flat slot i*(nb+1) + j, so the joint last slot
// is exactly (pair of both last slots).

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t nb);
std::pair<std::size_t, std::size_t> unpair_index(std::size_t k, std::size_t nb);

// Common refinement: the returned function sends x to
// pair_index(a(x), b(x), nb).  Both arguments must live on the same space.
IndexFn refine(const IndexFn& a, const IndexFn& b, std::size_t nb);

}  // namespace bochner
