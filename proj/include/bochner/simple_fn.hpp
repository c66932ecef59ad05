#pragma once

#include <cstddef>
#include <vector>

#include "bochner/measure_space.hpp"
#include "bochner/vector_space.hpp"

namespace bochner {

// A simple function as an indexed-partition record: an index function
// selecting a slot for every point, and one value per slot.  Two axioms are
// enforced at construction and preserved by every operation here:
//   * the last slot's value is the zero vector, so the "rest of the space"
//    part always exists and can absorb infinite measure harmlessly;
//   * the index function never exceeds the last slot.
// Representations are not canonical: slots may be empty and values may
// repeat.  Operations act on representations; tests confirm that pointwise
// equal records integrate identically.
class SimpleFn {
 public:
  SimpleFn(MeasureSpace space, IndexFn which, std::vector<Vector> values);

  const MeasureSpace& space() const { return space_; }
  const IndexFn& which() const { return which_; }
  const std::vector<Vector>& values() const { return values_; }
  const Vector& value(std::size_t n) const;
  std::size_t max_which() const { return values_.size() - 1; }
  const Carrier& carrier() const { return values_.front().carrier(); }

  Vector operator()(const Point& x) const;

  // Slot n's carrier set and its measure.
  MSet part(std::size_t n) const { return preimage(space_, which_, n); }
  ExtReal part_measure(std::size_t n) const {
    return measure_of(space_, part(n));
  }

 private:
  MeasureSpace space_;
  IndexFn which_;
  std::vector<Vector> values_;
};

// v on s, zero elsewhere: slot 0 is s, slot 1 the rest.
SimpleFn sf_indicator(const MeasureSpace& space, const MSet& s,
                      const Vector& v);

// One slot per part, in order; a zero slot is appended (with empty carrier
// set) unless values already ends with zero.  The parts must tile the space.
SimpleFn sf_from_partition(const MeasureSpace& space,
                           const std::vector<MSet>& parts,
                           const std::vector<Vector>& values);

SimpleFn sf_const(const MeasureSpace& space, const Vector& v);
SimpleFn sf_zero(const MeasureSpace& space, const Carrier& carrier);

// Pointwise algebra via the product-partition refinement.  Slot counts
// multiply; slots made empty by the refinement are kept, not compacted.
SimpleFn sf_plus(const SimpleFn& f, const SimpleFn& g);
SimpleFn sf_scal(double a, const SimpleFn& f);
SimpleFn sf_neg(const SimpleFn& f);
SimpleFn sf_minus(const SimpleFn& f, const SimpleFn& g);

// Real-carrier image operations: same index function, mapped values.
SimpleFn sf_norm(const SimpleFn& f);
SimpleFn sf_power(const SimpleFn& f, double p);

// Drops every slot whose value is zero or whose carrier set is empty,
// remapping the survivors onto slots 0..r-1 and the dropped ones onto the
// new last slot r.  The result is pointwise equal to f.
SimpleFn sf_remove_zeros(const SimpleFn& f);

// Measures of all slots in one pass; entry n equals
// measure_of(space, part(n)) exactly, including its summation order.
std::vector<ExtReal> sf_part_measures(const SimpleFn& f);

// True iff every slot before the last has finite measure.
bool sf_is_integrable(const SimpleFn& f);

// Smallest offending slot when not integrable.
std::size_t sf_first_infinite_part(const SimpleFn& f);

}  // namespace bochner
