#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "bochner/vector_space.hpp"

namespace bochner {

// A fixed enumeration of the rationals: index 0 is 0; then for each height
// h = 2, 3, ... the reduced fractions num/(h - num) with num = 1..h-1 and
// gcd(num, h - num) = 1 appear in order of num, positive before negative
// (or swapped, see SignOrder).  Reduced fractions make it injective.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return double(num) / double(den); }
};

enum class SignOrder { plus_first, minus_first };

Rational nth_rational(std::size_t n, SignOrder order = SignOrder::plus_first);

// Countable dense sequence in a carrier: rationals on the real line,
// rational tuples (through iterated Cantor pairing of coordinate indices)
// in higher dimensions.  Index 0 is the zero vector; zero_first = false
// skips it and enumerates the rest.  Instances memoize the rational table
// and are not safe to share across threads.
class DenseSeq {
 public:
  explicit DenseSeq(Carrier carrier, bool zero_first = true,
                    SignOrder order = SignOrder::plus_first);

  const Carrier& carrier() const { return carrier_; }
  bool zero_first() const { return zero_first_; }
  std::size_t dim() const { return dim_; }

  Vector at(std::size_t n) const;
  // Coordinates of element n into out[0..dim), avoiding Vector overhead.
  void coords_at(std::size_t n, double* out) const;

 private:
  double coord_value(std::size_t k) const;

  Carrier carrier_;
  bool zero_first_;
  SignOrder order_;
  std::size_t dim_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct WeakSepReport {
  bool ok = false;
  double eps = 0.0;
  std::size_t max_n = 0;
  // Per sample: the first index whose element comes eps-close, when found.
  std::vector<bool> found;
  std::vector<std::size_t> first_index;
  std::size_t worst_sample = 0;  // unmatched sample, else largest first_index
};

// Scans u for every sample until each has an eps-close element or max_n is
// reached.  Distances compare in squared form.
WeakSepReport weak_sep_check(const DenseSeq& u,
                             const std::vector<Vector>& samples, double eps,
                             std::size_t max_n);

}  // namespace bochner
