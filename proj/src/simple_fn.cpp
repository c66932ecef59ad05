#include "bochner/simple_fn.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace bochner {

namespace {

void require_same_space(const MeasureSpace& a, const MeasureSpace& b) {
  if (!(a == b)) throw std::invalid_argument("space mismatch");
}

IndexFn constant_index_fn(const MeasureSpace& space, std::size_t n) {
  if (is_finite_space(space)) {
    return IndexTable(std::vector<std::size_t>(as_finite(space).size(), n));
  }
  return StepIndexFn({0.0, 1.0}, {n});
}

}  // namespace

SimpleFn::SimpleFn(MeasureSpace space, IndexFn which,
                   std::vector<Vector> values)
    : space_(std::move(space)),
      which_(std::move(which)),
      values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("values must not be empty");
  for (const Vector& v : values_) {
    require_same_carrier(values_.front(), v);
  }
  if (!values_.back().is_zero()) {
    throw std::invalid_argument("last value not zero");
  }
  require_index_fn_matches(space_, which_);
  if (index_fn_max(which_) > max_which()) {
    throw std::invalid_argument("index out of range");
  }
}

const Vector& SimpleFn::value(std::size_t n) const {
  if (n >= values_.size()) throw std::invalid_argument("index out of range");
  return values_[n];
}

Vector SimpleFn::operator()(const Point& x) const {
  return values_[index_fn_at(which_, x)];
}

SimpleFn sf_indicator(const MeasureSpace& space, const MSet& s,
                      const Vector& v) {
  std::vector<Vector> values{v, Vector::zero(v.carrier())};
  if (is_finite_space(space)) {
    const auto& ps = std::get<PointSet>(s);
    std::vector<std::size_t> table(as_finite(space).size());
    for (std::size_t i = 0; i < table.size(); ++i) {
      table[i] = ps.contains(i) ? 0 : 1;
    }
    return SimpleFn(space, IndexTable(std::move(table)), std::move(values));
  }
  const auto& is = std::get<IntervalSet>(s);
  std::vector<double> breaks{0.0};
  for (const HalfOpen& p : is.pieces()) {
    if (p.lo != breaks.back()) breaks.push_back(p.lo);
    breaks.push_back(p.hi);
  }
  if (breaks.back() != 1.0) breaks.push_back(1.0);
  std::vector<std::size_t> idx(breaks.size() - 1);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    idx[c] = is.contains(breaks[c]) ? 0 : 1;
  }
  return SimpleFn(space, StepIndexFn(std::move(breaks), std::move(idx)),
                  std::move(values));
}

SimpleFn sf_from_partition(const MeasureSpace& space,
                           const std::vector<MSet>& parts,
                           const std::vector<Vector>& values) {
  if (parts.size() != values.size() || parts.empty()) {
    throw std::invalid_argument("length mismatch");
  }
  std::vector<Vector> slot_values = values;
  if (!slot_values.back().is_zero()) {
    slot_values.push_back(Vector::zero(values.front().carrier()));
  }

  IndexFn which = constant_index_fn(space, 0);
  if (is_finite_space(space)) {
    std::vector<std::optional<std::size_t>> owner(as_finite(space).size());
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto& ps = std::get<PointSet>(parts[p]);
      for (std::size_t i : ps.indices()) {
        if (i >= owner.size()) throw std::invalid_argument("index out of range");
        if (owner[i]) throw std::invalid_argument("not a partition");
        owner[i] = p;
      }
    }
    std::vector<std::size_t> table(owner.size());
    for (std::size_t i = 0; i < owner.size(); ++i) {
      if (!owner[i]) throw std::invalid_argument("not a partition");
      table[i] = *owner[i];
    }
    which = IndexTable(std::move(table));
  } else {
    std::vector<std::pair<HalfOpen, std::size_t>> tagged;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (const HalfOpen& piece : std::get<IntervalSet>(parts[p]).pieces()) {
        tagged.push_back({piece, p});
      }
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    if (tagged.empty() || tagged.front().first.lo != 0.0) {
      throw std::invalid_argument("not a partition");
    }
    std::vector<double> breaks{0.0};
    std::vector<std::size_t> idx;
    for (const auto& [piece, p] : tagged) {
      if (piece.lo != breaks.back()) {
        throw std::invalid_argument("not a partition");
      }
      breaks.push_back(piece.hi);
      idx.push_back(p);
    }
    if (breaks.back() != 1.0) throw std::invalid_argument("not a partition");
    which = StepIndexFn(std::move(breaks), std::move(idx));
  }
  return SimpleFn(space, std::move(which), std::move(slot_values));
}

SimpleFn sf_const(const MeasureSpace& space, const Vector& v) {
  if (v.is_zero()) {
    return SimpleFn(space, constant_index_fn(space, 0), {v});
  }
  return SimpleFn(space, constant_index_fn(space, 0),
                  {v, Vector::zero(v.carrier())});
}

SimpleFn sf_zero(const MeasureSpace& space, const Carrier& carrier) {
  return sf_const(space, Vector::zero(carrier));
}

SimpleFn sf_plus(const SimpleFn& f, const SimpleFn& g) {
  require_same_space(f.space(), g.space());
  require_same_carrier(f.values().front(), g.values().front());
  std::size_t nb = g.max_which();
  IndexFn joint = refine(f.which(), g.which(), nb);
  std::vector<Vector> values;
  values.reserve((f.max_which() + 1) * (nb + 1));
  for (std::size_t k = 0; k < (f.max_which() + 1) * (nb + 1); ++k) {
    auto [i, j] = unpair_index(k, nb);
    values.push_back(f.value(i) + g.value(j));
  }
  return SimpleFn(f.space(), std::move(joint), std::move(values));
}

SimpleFn sf_scal(double a, const SimpleFn& f) {
  std::vector<Vector> values;
  values.reserve(f.values().size());
  for (const Vector& v : f.values()) values.push_back(a * v);
  return SimpleFn(f.space(), f.which(), std::move(values));
}

SimpleFn sf_neg(const SimpleFn& f) { return sf_scal(-1.0, f); }

SimpleFn sf_minus(const SimpleFn& f, const SimpleFn& g) {
  return sf_plus(f, sf_neg(g));
}

SimpleFn sf_norm(const SimpleFn& f) {
  std::vector<Vector> values;
  values.reserve(f.values().size());
  for (const Vector& v : f.values()) values.push_back(Vector::real(norm(v)));
  return SimpleFn(f.space(), f.which(), std::move(values));
}

SimpleFn sf_power(const SimpleFn& f, double p) {
  if (f.carrier() != Carrier::real()) {
    throw std::invalid_argument("power needs a real-valued function");
  }
  if (!(p > 0.0)) throw std::domain_error("exponent must be positive");
  std::vector<Vector> values;
  values.reserve(f.values().size());
  for (const Vector& v : f.values()) {
    double x = v.scalar();
    if (x < 0.0) throw std::domain_error("negative value under power");
    values.push_back(Vector::real(std::pow(x, p)));
  }
  return SimpleFn(f.space(), f.which(), std::move(values));
}

namespace {

// Number of points (atoms or cells) mapped to each slot.
std::vector<std::size_t> slot_occupancy(const SimpleFn& f) {
  std::vector<std::size_t> hits(f.max_which() + 1, 0);
  if (is_finite_space(f.space())) {
    for (std::size_t i : std::get<IndexTable>(f.which()).indices()) ++hits[i];
  } else {
    for (std::size_t i : std::get<StepIndexFn>(f.which()).indices()) ++hits[i];
  }
  return hits;
}

}  // namespace

SimpleFn sf_remove_zeros(const SimpleFn& f) {
  std::vector<std::size_t> hits = slot_occupancy(f);
  std::vector<std::size_t> remap(f.max_which() + 1);
  std::vector<Vector> values;
  for (std::size_t n = 0; n <= f.max_which(); ++n) {
    if (hits[n] > 0 && !f.value(n).is_zero()) {
      remap[n] = values.size();
      values.push_back(f.value(n));
    } else {
      remap[n] = static_cast<std::size_t>(-1);
    }
  }
  std::size_t last = values.size();
  for (std::size_t& r : remap) {
    if (r == static_cast<std::size_t>(-1)) r = last;
  }
  values.push_back(Vector::zero(f.carrier()));

  if (is_finite_space(f.space())) {
    std::vector<std::size_t> table = std::get<IndexTable>(f.which()).indices();
    for (std::size_t& t : table) t = remap[t];
    return SimpleFn(f.space(), IndexTable(std::move(table)), std::move(values));
  }
  const StepIndexFn& step = std::get<StepIndexFn>(f.which());
  std::vector<std::size_t> idx = step.indices();
  for (std::size_t& t : idx) t = remap[t];
  return SimpleFn(f.space(),
                  StepIndexFn(step.breaks(), std::move(idx)).normalized(),
                  std::move(values));
}

std::vector<ExtReal> sf_part_measures(const SimpleFn& f) {
  std::vector<ExtReal> out(f.max_which() + 1, ExtReal(0.0));
  if (is_finite_space(f.space())) {
    const FiniteSpace& fs = as_finite(f.space());
    const auto& table = std::get<IndexTable>(f.which()).indices();
    for (std::size_t i = 0; i < table.size(); ++i) {
      out[table[i]] += fs.mass(i);
    }
    return out;
  }
  // Reproduce measure_of(preimage(., n)) exactly: runs of touching cells
  // with the same slot contribute one merged width.
  const StepIndexFn& step = std::get<StepIndexFn>(f.which());
  std::size_t c = 0;
  while (c < step.cell_count()) {
    std::size_t slot = step.cell_index(c);
    std::size_t end = c + 1;
    while (end < step.cell_count() && step.cell_index(end) == slot) ++end;
    out[slot] += ExtReal(step.breaks()[end] - step.breaks()[c]);
    c = end;
  }
  return out;
}

bool sf_is_integrable(const SimpleFn& f) {
  std::vector<ExtReal> m = sf_part_measures(f);
  for (std::size_t n = 0; n < f.max_which(); ++n) {
    if (m[n].is_infinite()) return false;
  }
  return true;
}

std::size_t sf_first_infinite_part(const SimpleFn& f) {
  std::vector<ExtReal> m = sf_part_measures(f);
  for (std::size_t n = 0; n < f.max_which(); ++n) {
    if (m[n].is_infinite()) return n;
  }
  throw std::logic_error("every part has finite measure");
}

}  // namespace bochner
