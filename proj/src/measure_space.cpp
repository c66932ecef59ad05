#include "bochner/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bochner {

Point Point::coord(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("coordinate outside [0, 1)");
  }
  return Point(x);
}

FiniteSpace::FiniteSpace(std::vector<ExtReal> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) {
    throw std::invalid_argument("finite space needs at least one atom");
  }
}

const ExtReal& FiniteSpace::mass(std::size_t i) const {
  if (i >= masses_.size()) throw std::invalid_argument("index out of range");
  return masses_[i];
}

ExtReal FiniteSpace::total_mass() const {
  ExtReal total(0.0);
  for (const ExtReal& m : masses_) total += m;
  return total;
}

const FiniteSpace& as_finite(const MeasureSpace& s) {
  if (!is_finite_space(s)) {
    throw std::invalid_argument("operation needs a finite space");
  }
  return std::get<FiniteSpace>(s);
}

PointSet::PointSet(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i - 1] >= indices_[i]) {
      throw std::invalid_argument("point set indices not strictly increasing");
    }
  }
}

bool PointSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

IntervalSet::IntervalSet(std::vector<HalfOpen> pieces)
    : pieces_(std::move(pieces)) {
  for (const HalfOpen& p : pieces_) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) {
      throw std::invalid_argument("piece endpoint not finite");
    }
    if (p.lo < 0.0 || p.hi > 1.0) {
      throw std::invalid_argument("piece outside [0, 1]");
    }
    if (p.hi - p.lo < kMinWidth) {
      throw std::invalid_argument("piece narrower than minimum width");
    }
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i - 1].hi > pieces_[i].lo) {
      throw std::invalid_argument("pieces overlap or are out of order");
    }
  }
  // Merge pieces that touch exactly, so a union has one representation.
  std::vector<HalfOpen> merged;
  for (const HalfOpen& p : pieces_) {
    if (!merged.empty() && merged.back().hi == p.lo) {
      merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  pieces_ = std::move(merged);
}

bool IntervalSet::contains(double x) const {
  for (const HalfOpen& p : pieces_) {
    if (x >= p.lo && x < p.hi) return true;
  }
  return false;
}

double IntervalSet::total_length() const {
  double total = 0.0;
  for (const HalfOpen& p : pieces_) total += p.hi - p.lo;
  return total;
}

MSet mset_union(const MSet& a, const MSet& b) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("set kinds differ");
  }
  if (std::holds_alternative<PointSet>(a)) {
    const auto& pa = std::get<PointSet>(a).indices();
    const auto& pb = std::get<PointSet>(b).indices();
    std::vector<std::size_t> joined;
    joined.reserve(pa.size() + pb.size());
    std::merge(pa.begin(), pa.end(), pb.begin(), pb.end(),
               std::back_inserter(joined));
    for (std::size_t i = 1; i < joined.size(); ++i) {
      if (joined[i - 1] == joined[i]) {
        throw std::invalid_argument("sets not disjoint");
      }
    }
    return PointSet(std::move(joined));
  }
  std::vector<HalfOpen> joined = std::get<IntervalSet>(a).pieces();
  const auto& pb = std::get<IntervalSet>(b).pieces();
  joined.insert(joined.end(), pb.begin(), pb.end());
  std::sort(joined.begin(), joined.end(),
            [](const HalfOpen& x, const HalfOpen& y) { return x.lo < y.lo; });
  return IntervalSet(std::move(joined));  // overlap check happens here
}

ExtReal measure_of(const MeasureSpace& space, const MSet& s) {
  if (is_finite_space(space)) {
    if (!std::holds_alternative<PointSet>(s)) {
      throw std::invalid_argument("set does not belong to this space");
    }
    const FiniteSpace& fs = std::get<FiniteSpace>(space);
    ExtReal total(0.0);
    for (std::size_t i : std::get<PointSet>(s).indices()) {
      total += fs.mass(i);
    }
    return total;
  }
  if (!std::holds_alternative<IntervalSet>(s)) {
    throw std::invalid_argument("set does not belong to this space");
  }
  return ExtReal(std::get<IntervalSet>(s).total_length());
}

IndexTable::IndexTable(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) {
    throw std::invalid_argument("index table needs at least one entry");
  }
}

std::size_t IndexTable::at(std::size_t i) const {
  if (i >= indices_.size()) throw std::invalid_argument("index out of range");
  return indices_[i];
}

std::size_t IndexTable::max_index() const {
  return *std::max_element(indices_.begin(), indices_.end());
}

StepIndexFn::StepIndexFn(std::vector<double> breaks,
                         std::vector<std::size_t> indices)
    : breaks_(std::move(breaks)), indices_(std::move(indices)) {
  if (breaks_.size() < 2 || indices_.size() + 1 != breaks_.size()) {
    throw std::invalid_argument("length mismatch");
  }
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0) {
    throw std::invalid_argument("breakpoints must run from 0 to 1");
  }
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] - breaks_[i - 1] >= kMinWidth)) {
      throw std::invalid_argument("cell narrower than minimum width");
    }
  }
}

std::size_t StepIndexFn::at(double x) const {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("coordinate outside [0, 1)");
  }
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return indices_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

std::size_t StepIndexFn::max_index() const {
  return *std::max_element(indices_.begin(), indices_.end());
}

StepIndexFn StepIndexFn::normalized() const {
  std::vector<double> nb{breaks_.front()};
  std::vector<std::size_t> ni;
  for (std::size_t c = 0; c < indices_.size(); ++c) {
    if (!ni.empty() && ni.back() == indices_[c]) {
      nb.back() = breaks_[c + 1];
    } else {
      ni.push_back(indices_[c]);
      nb.push_back(breaks_[c + 1]);
    }
  }
  return StepIndexFn(std::move(nb), std::move(ni));
}

std::size_t index_fn_max(const IndexFn& w) {
  return std::visit([](const auto& f) { return f.max_index(); }, w);
}

std::size_t index_fn_at(const IndexFn& w, const Point& x) {
  if (std::holds_alternative<IndexTable>(w)) {
    if (!x.is_atom()) throw std::invalid_argument("point kind mismatch");
    return std::get<IndexTable>(w).at(x.atom_index());
  }
  if (x.is_atom()) throw std::invalid_argument("point kind mismatch");
  return std::get<StepIndexFn>(w).at(x.coordinate());
}

void require_index_fn_matches(const MeasureSpace& space, const IndexFn& w) {
  if (is_finite_space(space)) {
    if (!std::holds_alternative<IndexTable>(w)) {
      throw std::invalid_argument("index function kind does not match space");
    }
    if (std::get<IndexTable>(w).size() != as_finite(space).size()) {
      throw std::invalid_argument("length mismatch");
    }
  } else if (!std::holds_alternative<StepIndexFn>(w)) {
    throw std::invalid_argument("index function kind does not match space");
  }
}

MSet preimage(const MeasureSpace& space, const IndexFn& w, std::size_t n) {
  require_index_fn_matches(space, w);
  if (std::holds_alternative<IndexTable>(w)) {
    const auto& table = std::get<IndexTable>(w).indices();
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] == n) hits.push_back(i);
    }
    return PointSet(std::move(hits));
  }
  const StepIndexFn& step = std::get<StepIndexFn>(w);
  std::vector<HalfOpen> pieces;
  for (std::size_t c = 0; c < step.cell_count(); ++c) {
    if (step.cell_index(c) == n) {
      pieces.push_back({step.breaks()[c], step.breaks()[c + 1]});
    }
  }
  return IntervalSet(std::move(pieces));
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t nb) {
  if (j > nb) throw std::invalid_argument("index out of range");
  return i * (nb + 1) + j;
}

std::pair<std::size_t, std::size_t> unpair_index(std::size_t k,
                                                 std::size_t nb) {
  return {k / (nb + 1), k % (nb + 1)};
}

IndexFn refine(const IndexFn& a, const IndexFn& b, std::size_t nb) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("index function kinds differ");
  }
  if (index_fn_max(b) > nb) throw std::invalid_argument("index out of range");
  if (std::holds_alternative<IndexTable>(a)) {
    const auto& ta = std::get<IndexTable>(a).indices();
    const auto& tb = std::get<IndexTable>(b).indices();
    if (ta.size() != tb.size()) throw std::invalid_argument("length mismatch");
    std::vector<std::size_t> joint(ta.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
      joint[i] = pair_index(ta[i], tb[i], nb);
    }
    return IndexTable(std::move(joint));
  }
  const StepIndexFn& sa = std::get<StepIndexFn>(a);
  const StepIndexFn& sb = std::get<StepIndexFn>(b);
  std::vector<double> merged;
  merged.reserve(sa.breaks().size() + sb.breaks().size());
  std::merge(sa.breaks().begin(), sa.breaks().end(), sb.breaks().begin(),
             sb.breaks().end(), std::back_inserter(merged));
  // Coalesce breakpoints closer than the minimum cell width (keeping the
  // endpoints 0 and 1), then assign each surviving cell its joint slot.
  std::vector<double> breaks{0.0};
  for (double t : merged) {
    if (t - breaks.back() < kMinWidth) continue;
    if (1.0 - t < kMinWidth && t != 1.0) continue;
    breaks.push_back(t);
  }
  std::vector<std::size_t> joint(breaks.size() - 1);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    joint[c] = pair_index(sa.at(breaks[c]), sb.at(breaks[c]), nb);
  }
  return StepIndexFn(std::move(breaks), std::move(joint));
}

}  // namespace bochner
