#include "bochner/bochner_integral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "bochner/kernels.hpp"

namespace bochner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ext_to_double(const ExtReal& x) {
  return x.is_infinite() ? kInf : x.to_real();
}

std::string point_label(const Point& x) {
  if (x.is_atom()) return "atom " + std::to_string(x.atom_index());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x.coordinate());
  return buf;
}

}  // namespace

Vector bint_sf(const SimpleFn& f) {
  std::vector<ExtReal> measures = sf_part_measures(f);
  for (std::size_t n = 0; n <= f.max_which(); ++n) {
    if (measures[n].is_infinite() && !f.value(n).is_zero()) {
      throw NotIntegrable(n);
    }
  }
  Vector acc = Vector::zero(f.carrier());
  for (std::size_t n = 0; n <= f.max_which(); ++n) {
    acc = acc + measures[n].to_real() * f.value(n);
  }
  return acc;
}

Vector CandidateSource::at(std::size_t n) const {
  std::vector<double> coords(carrier().dim());
  coords_at(n, coords.data());
  return Vector(carrier(), std::move(coords));
}

namespace {

class DenseSource final : public CandidateSource {
 public:
  explicit DenseSource(DenseSeq u) : u_(std::move(u)) {}
  const Carrier& carrier() const override { return u_.carrier(); }
  bool zero_first() const override { return u_.zero_first(); }
  void coords_at(std::size_t n, double* out) const override {
    u_.coords_at(n, out);
  }

 private:
  DenseSeq u_;
};

// Zero, then the given values, then the nonzero part of the base sequence.
class AugmentedSource final : public CandidateSource {
 public:
  AugmentedSource(DenseSeq base, std::vector<Vector> values)
      : base_(std::move(base)), values_(std::move(values)) {
    if (!base_.zero_first()) {
      throw std::invalid_argument("augmentation needs a zero-first sequence");
    }
    for (const Vector& v : values_) {
      if (!(v.carrier() == base_.carrier())) {
        throw std::invalid_argument("carrier mismatch");
      }
    }
  }
  const Carrier& carrier() const override { return base_.carrier(); }
  bool zero_first() const override { return true; }
  void coords_at(std::size_t n, double* out) const override {
    if (n == 0) {
      std::fill(out, out + base_.dim(), 0.0);
    } else if (n <= values_.size()) {
      const std::vector<double>& c = values_[n - 1].coords();
      std::copy(c.begin(), c.end(), out);
    } else {
      base_.coords_at(n - values_.size(), out);
    }
  }

 private:
  DenseSeq base_;
  std::vector<Vector> values_;
};

}  // namespace

std::shared_ptr<CandidateSource> dense_source(DenseSeq u) {
  return std::make_shared<DenseSource>(std::move(u));
}

std::shared_ptr<CandidateSource> augmented_source(DenseSeq u,
                                                  std::vector<Vector> values) {
  return std::make_shared<AugmentedSource>(std::move(u), std::move(values));
}

std::shared_ptr<CandidateSource> default_source(const VectorFn& f) {
  DenseSeq base(f.carrier());
  switch (f.cls()) {
    case VectorFn::Class::simple:
      return augmented_source(std::move(base), f.as_simple().values());
    case VectorFn::Class::tabulated:
      return augmented_source(std::move(base), f.table());
    case VectorFn::Class::lipschitz:
      return dense_source(std::move(base));
  }
  throw std::logic_error("unreachable");
}

namespace {

// Shared point layout for both forms of the construction.
struct PointLayout {
  bool finite = false;
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> grid;  // interval only: count + 1 boundaries
  std::vector<std::vector<double>> soa;
  std::vector<bool> breakpoint_cell;
};

PointLayout build_layout(const VectorFn& f, int resolution) {
  PointLayout lay;
  lay.finite = is_finite_space(f.space());
  lay.dim = f.carrier().dim();
  if (lay.finite) {
    lay.count = as_finite(f.space()).size();
  } else {
    if (resolution < 1 || resolution > 22) {
      throw std::invalid_argument("resolution must be in [1, 22]");
    }
    lay.count = std::size_t{1} << resolution;
    double h = std::ldexp(1.0, -resolution);
    lay.grid.resize(lay.count + 1);
    for (std::size_t k = 0; k <= lay.count; ++k) lay.grid[k] = double(k) * h;
    lay.breakpoint_cell.assign(lay.count, false);
    std::vector<double> breaks;
    if (f.cls() == VectorFn::Class::lipschitz) {
      breaks = f.breakpoints();
    } else if (f.cls() == VectorFn::Class::simple) {
      const auto& step = std::get<StepIndexFn>(f.as_simple().which());
      breaks.assign(step.breaks().begin() + 1, step.breaks().end() - 1);
    }
    for (double b : breaks) {
      auto c = std::size_t(b * double(lay.count));
      if (c < lay.count && b != lay.grid[c]) lay.breakpoint_cell[c] = true;
    }
  }
  lay.soa.assign(lay.dim, std::vector<double>(lay.count));
  for (std::size_t i = 0; i < lay.count; ++i) {
    Point x = lay.finite
                  ? Point::atom(i)
                  : Point::coord(0.5 * (lay.grid[i] + lay.grid[i + 1]));
    Vector v = f(x);
    for (std::size_t c = 0; c < lay.dim; ++c) lay.soa[c][i] = v[c];
  }
  return lay;
}

IndexFn layout_index_fn(const PointLayout& lay, std::vector<std::size_t> idx,
                        bool normalize) {
  if (lay.finite) return IndexTable(std::move(idx));
  StepIndexFn step(lay.grid, std::move(idx));
  return normalize ? step.normalized() : step;
}

}  // namespace

SimpleFn approx_step(const VectorFn& f, const CandidateSource& u,
                     std::size_t n, int resolution) {
  if (!(f.carrier() == u.carrier())) {
    throw std::invalid_argument("carrier mismatch");
  }
  PointLayout lay = build_layout(f, resolution);
  std::vector<double> cand(lay.dim);
  std::vector<std::size_t> idx(lay.count);
  for (std::size_t i = 0; i < lay.count; ++i) {
    double best = kInf;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      u.coords_at(j, cand.data());
      double d = 0.0;
      for (std::size_t c = 0; c < lay.dim; ++c) {
        double t = lay.soa[c][i] - cand[c];
        d += t * t;
      }
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    idx[i] = best_j == 0 ? n : best_j - 1;
  }
  std::vector<Vector> values;
  values.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) values.push_back(u.at(k + 1));
  values.push_back(u.at(0));  // must be zero, or the record is rejected
  return SimpleFn(f.space(), layout_index_fn(lay, std::move(idx), false),
                  std::move(values));
}

ApproxSequence::ApproxSequence(VectorFn f,
                               std::shared_ptr<const CandidateSource> u,
                               int resolution)
    : f_(std::move(f)), u_(std::move(u)), resolution_(resolution) {
  if (!(f_.carrier() == u_->carrier())) {
    throw std::invalid_argument("carrier mismatch");
  }
  PointLayout lay = build_layout(f_, resolution_);
  finite_ = lay.finite;
  count_ = lay.count;
  dim_ = lay.dim;
  grid_ = std::move(lay.grid);
  breakpoint_cell_ = std::move(lay.breakpoint_cell);
  soa_ = std::move(lay.soa);
  soa_ptrs_.resize(dim_);
  for (std::size_t c = 0; c < dim_; ++c) soa_ptrs_[c] = soa_[c].data();
  box_lo_.resize(dim_);
  box_hi_.resize(dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    auto [lo, hi] = std::minmax_element(soa_[c].begin(), soa_[c].end());
    box_lo_[c] = *lo;
    box_hi_[c] = *hi;
  }
  best_sq_.assign(count_, kInf);
  second_sq_.assign(count_, kInf);
  baseline_sq_.assign(count_, kInf);
  best_idx_.assign(count_, std::numeric_limits<std::uint32_t>::max());
  global_second_max_ = kInf;
}

double ApproxSequence::box_distance_sq(const double* cand) const {
  double d = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    double t = 0.0;
    if (cand[c] < box_lo_[c]) t = box_lo_[c] - cand[c];
    if (cand[c] > box_hi_[c]) t = cand[c] - box_hi_[c];
    d += t * t;
  }
  return d;
}

void ApproxSequence::refresh_global_max() {
  global_second_max_ =
      *std::max_element(second_sq_.begin(), second_sq_.end());
  dirty_ = 0;
}

void ApproxSequence::process_candidate(std::size_t j) {
  thread_local std::vector<double> cand;
  cand.resize(dim_);
  u_->coords_at(j, cand.data());
  // No point can see an update unless the candidate gets below its
  // second-best distance; the box bound proves that wholesale.  The small
  // relative margin keeps rounding from ever disagreeing with a full scan.
  if (box_distance_sq(cand.data()) >= global_second_max_ * (1.0 + 1e-9)) {
    return;
  }
  if (dim_ <= 4) {
    kernels::nearest_update(dim_, soa_ptrs_.data(), count_, cand.data(),
                            static_cast<std::uint32_t>(j), best_sq_.data(),
                            second_sq_.data(), best_idx_.data());
  } else {
    for (std::size_t i = 0; i < count_; ++i) {
      double d = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) {
        double t = soa_[c][i] - cand[c];
        d += t * t;
      }
      if (d < best_sq_[i]) {
        second_sq_[i] = best_sq_[i];
        best_sq_[i] = d;
        best_idx_[i] = static_cast<std::uint32_t>(j);
      } else if (d < second_sq_[i]) {
        second_sq_[i] = d;
      }
    }
  }
  if (j == 0) baseline_sq_ = best_sq_;
  // Second-best distances only ever shrink, so a stale bound is merely a
  // weaker prune, never a wrong one; refresh in batches to keep the scan
  // off the per-candidate path.
  if (++dirty_ >= 32) refresh_global_max();
}

void ApproxSequence::advance_to(std::size_t n) {
  if (n >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("stage too large");
  }
  while (next_ <= n) process_candidate(next_++);
}

SimpleFn ApproxSequence::build_record() const {
  std::vector<std::uint32_t> selected(best_idx_.begin(), best_idx_.end());
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()),
                 selected.end());
  constexpr std::size_t kLast = std::numeric_limits<std::size_t>::max();
  std::unordered_map<std::uint32_t, std::size_t> slot_of;
  std::vector<Vector> values;
  for (std::uint32_t j : selected) {
    Vector v = u_->at(j);
    if (v.is_zero()) {
      slot_of[j] = kLast;
    } else {
      slot_of[j] = values.size();
      values.push_back(std::move(v));
    }
  }
  std::size_t last = values.size();
  values.push_back(Vector::zero(f_.carrier()));
  std::vector<std::size_t> idx(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    std::size_t s = slot_of.at(best_idx_[i]);
    idx[i] = s == kLast ? last : s;
  }
  PointLayout lay;  // just enough for layout_index_fn
  lay.finite = finite_;
  lay.grid = grid_;
  return SimpleFn(f_.space(), layout_index_fn(lay, std::move(idx), true),
                  std::move(values));
}

SimpleFn ApproxSequence::record_at(std::size_t n) {
  if (n + 1 >= next_) {
    advance_to(n);
    return build_record();
  }
  // Earlier stage than the classifier state: replay on a second instance.
  if (!replay_ || replay_->next_ > n + 1) {
    replay_ = std::make_unique<ApproxSequence>(f_, u_, resolution_);
  }
  return replay_->record_at(n);
}

Vector ApproxSequence::integral_at(std::size_t n) {
  auto it = integral_memo_.find(n);
  if (it != integral_memo_.end()) return it->second;
  Vector v = bint_sf(record_at(n));
  integral_memo_.emplace(n, v);
  return v;
}

double ApproxSequence::misclassified_state() const {
  if (finite_) return 0.0;
  double L = f_.cls() == VectorFn::Class::lipschitz ? f_.lipschitz_bound() : 0.0;
  double total = 0.0;
  for (std::size_t c = 0; c < count_; ++c) {
    double w = grid_[c + 1] - grid_[c];
    if (breakpoint_cell_[c]) {
      total += w;
      continue;
    }
    double margin = std::sqrt(second_sq_[c]) - std::sqrt(best_sq_[c]);
    if (margin <= L * w + 1e-12) total += w;
  }
  return total;
}

double ApproxSequence::misclassified_at(std::size_t n) {
  if (n + 1 >= next_) {
    advance_to(n);
    return misclassified_state();
  }
  record_at(n);  // position the replay instance
  return replay_->misclassified_state();
}

std::vector<std::size_t> ApproxSequence::probe_points(
    std::size_t count) const {
  std::size_t take = std::min(count, count_);
  std::vector<std::size_t> pts(take);
  for (std::size_t k = 0; k < take; ++k) pts[k] = k * count_ / take;
  return pts;
}

double ApproxSequence::distance_at(std::size_t point) const {
  return std::sqrt(best_sq_.at(point));
}

double ApproxSequence::baseline_at(std::size_t point) const {
  return std::sqrt(baseline_sq_.at(point));
}

Point ApproxSequence::coordinate_of(std::size_t point) const {
  if (finite_) return Point::atom(point);
  return Point::coord(0.5 * (grid_.at(point) + grid_.at(point + 1)));
}

std::vector<std::size_t> evidence_schedule(std::size_t n_max) {
  std::vector<std::size_t> schedule{0};
  for (std::size_t n = 1; n < n_max; n *= 2) schedule.push_back(n);
  if (n_max > 0) schedule.push_back(n_max);
  return schedule;
}

std::vector<L1Row> build_evidence(const BifWitness& bf,
                                  const std::vector<std::size_t>& schedule,
                                  int l1_depth) {
  std::vector<L1Row> rows;
  rows.reserve(schedule.size());
  for (std::size_t n : schedule) {
    SimpleFn s = bf.seq(n);
    LintResult lr = lint_p(residual_norm_fn(bf.f, s), l1_depth);
    L1Row row;
    row.n = n;
    row.l1_lower = ext_to_double(lr.value);
    row.l1_upper = row.l1_lower + lr.error_bound;
    row.integrable = sf_is_integrable(s);
    row.misclassified = bf.approx ? bf.approx->misclassified_at(n) : -1.0;
    row.integral = bint_sf(s);
    rows.push_back(std::move(row));
  }
  return rows;
}

BifWitness bif_from_separable(const VectorFn& f, const ApproxOptions& opt,
                              std::shared_ptr<const CandidateSource> u) {
  if (!u) u = default_source(f);
  auto ap = std::make_shared<ApproxSequence>(f, u, opt.resolution);
  BifWitness bf{f};
  bf.approx = ap;
  bf.seq = [ap](std::size_t n) { return ap->record_at(n); };
  bf.integral_seq = [ap](std::size_t n) { return ap->integral_at(n); };
  bf.n_max = opt.n_max;
  bf.options = opt;
  bf.norm_bound = lint_p(norm_fn(f), opt.l1_depth);
  if (opt.with_evidence) {
    bf.evidence = build_evidence(bf, evidence_schedule(opt.n_max), opt.l1_depth);
    ap->record_at(opt.n_max);  // make sure probes read the final stage
    ProbeEvidence pe;
    pe.meaningful = u->zero_first();
    pe.dominated = true;
    for (std::size_t p : ap->probe_points(opt.probe_count)) {
      ++pe.count;
      double d = ap->distance_at(p);
      pe.final_max_dist = std::max(pe.final_max_dist, d);
      pe.dominated = pe.dominated && d <= ap->baseline_at(p);
    }
    bf.probes = pe;
  }
  return bf;
}

namespace {

void require_compatible(const BifWitness& a, const BifWitness& b) {
  if (!(a.f.space() == b.f.space())) {
    throw std::invalid_argument("space mismatch");
  }
  if (!(a.f.carrier() == b.f.carrier())) {
    throw std::invalid_argument("carrier mismatch");
  }
}

// Pointwise sum of two records with only the occupied joint slots kept.
// Same function values as the refinement-based sum, but the slot count
// stays bounded by the number of points, which keeps derived sequences
// usable at large stages.
SimpleFn sf_plus_compact(const SimpleFn& f, const SimpleFn& g) {
  IndexFn joint = refine(f.which(), g.which(), g.max_which());
  std::vector<std::size_t> idx =
      std::holds_alternative<IndexTable>(joint)
          ? std::get<IndexTable>(joint).indices()
          : std::get<StepIndexFn>(joint).indices();
  std::vector<std::size_t> occupied = idx;
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()),
                 occupied.end());
  std::unordered_map<std::size_t, std::size_t> slot_of;
  std::vector<Vector> values;
  for (std::size_t k : occupied) {
    auto [i, j] = unpair_index(k, g.max_which());
    Vector v = f.value(i) + g.value(j);
    slot_of[k] = values.size();
    values.push_back(std::move(v));
  }
  // The joint last slot may be unoccupied; either way the record needs a
  // zero last slot of its own.
  values.push_back(Vector::zero(f.carrier()));
  for (std::size_t& k : idx) k = slot_of.at(k);
  if (std::holds_alternative<IndexTable>(joint)) {
    return SimpleFn(f.space(), IndexTable(std::move(idx)), std::move(values));
  }
  const auto& breaks = std::get<StepIndexFn>(joint).breaks();
  return SimpleFn(f.space(),
                  StepIndexFn(breaks, std::move(idx)).normalized(),
                  std::move(values));
}

VectorFn vf_plus(const VectorFn& a, const VectorFn& b) {
  if (is_finite_space(a.space())) {
    std::size_t size = as_finite(a.space()).size();
    std::vector<Vector> table;
    table.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      table.push_back(a(Point::atom(i)) + b(Point::atom(i)));
    }
    return VectorFn::tabulated(a.space(), std::move(table));
  }
  auto part = [](const VectorFn& f) {
    std::pair<double, std::vector<double>> out{0.0, {}};
    if (f.cls() == VectorFn::Class::lipschitz) {
      out = {f.lipschitz_bound(), f.breakpoints()};
    } else {
      const auto& step = std::get<StepIndexFn>(f.as_simple().which());
      out.second.assign(step.breaks().begin() + 1, step.breaks().end() - 1);
    }
    return out;
  };
  auto [la, ba] = part(a);
  auto [lb, bb] = part(b);
  std::vector<double> breaks;
  std::merge(ba.begin(), ba.end(), bb.begin(), bb.end(),
             std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  VectorFn ca = a, cb = b;
  return VectorFn::lipschitz(
      a.carrier(),
      [ca, cb](double x) {
        Point p = Point::coord(x);
        return ca(p) + cb(p);
      },
      la + lb, std::move(breaks));
}

BifWitness derived_witness(VectorFn f,
                           std::function<SimpleFn(std::size_t)> seq,
                           std::size_t n_max, const ApproxOptions& opt) {
  BifWitness out{std::move(f)};
  out.seq = std::move(seq);
  out.integral_seq = [s = out.seq](std::size_t n) { return bint_sf(s(n)); };
  out.n_max = n_max;
  out.options = opt;
  out.options.with_evidence = false;
  out.norm_bound = lint_p(norm_fn(out.f), opt.l1_depth);
  return out;
}

}  // namespace

BifWitness bif_plus(const BifWitness& a, const BifWitness& b) {
  require_compatible(a, b);
  return derived_witness(
      vf_plus(a.f, b.f),
      [sa = a.seq, sb = b.seq](std::size_t n) {
        return sf_plus_compact(sa(n), sb(n));
      },
      std::min(a.n_max, b.n_max), a.options);
}

BifWitness bif_scal(double c, const BifWitness& a) {
  return derived_witness(
      vf_scal(c, a.f),
      [c, sa = a.seq](std::size_t n) { return sf_scal(c, sa(n)); }, a.n_max,
      a.options);
}

BifWitness bif_neg(const BifWitness& a) { return bif_scal(-1.0, a); }

BifWitness bif_minus(const BifWitness& a, const BifWitness& b) {
  return bif_plus(a, bif_neg(b));
}

namespace {

std::size_t effective_stride(const BifWitness& bf, const BintOptions& opt) {
  if (opt.stride > 0) return opt.stride;
  if (bf.options.bint_stride > 0) return bf.options.bint_stride;
  return std::max<std::size_t>(1, bf.n_max / 512);
}

}  // namespace

BintResult bint(const BifWitness& bf, const BintOptions& opt) {
  std::size_t stride = effective_stride(bf, opt);
  LimitEstimate est = seq_limit_estimate(bf.integral_seq, opt.eps, bf.n_max,
                                         opt.window, stride);
  return {est.value, est.stabilized_at, est.eps, est.window, est.stride};
}

ExtCheck bint_ext_check(const BifWitness& a, const BifWitness& b,
                        const std::vector<Point>& probes, double probe_tol,
                        const BintOptions& opt) {
  require_compatible(a, b);
  ExtCheck out;
  for (const Point& x : probes) {
    double d = distance(a.f(x), b.f(x));
    out.probe_max_diff = std::max(out.probe_max_diff, d);
    if (d > probe_tol) {
      throw std::invalid_argument("functions differ at " + point_label(x));
    }
  }
  out.value_a = bint(a, opt).value;
  out.value_b = bint(b, opt).value;
  out.integral_diff = distance(out.value_a, out.value_b);
  return out;
}

bool sf_zero_ae(const SimpleFn& f) {
  std::vector<ExtReal> measures = sf_part_measures(f);
  for (std::size_t n = 0; n <= f.max_which(); ++n) {
    if (!f.value(n).is_zero() && measures[n] != ExtReal(0.0)) return false;
  }
  return true;
}

DominatedReport dominated_convergence_run(
    const std::function<BifWitness(std::size_t)>& family,
    const BifWitness& limit, const NonNegFn& g,
    const std::vector<std::size_t>& test_stages,
    const std::vector<Point>& probes, int g_depth, const BintOptions& opt) {
  LintResult g_int = lint_p(g, g_depth);
  if (g_int.value.is_infinite()) {
    throw std::domain_error("dominating function not integrable");
  }
  DominatedReport report;
  report.bound_upper = g_int.value.to_real() + g_int.error_bound;
  report.limit_integral = bint(limit, opt).value;
  for (std::size_t n : test_stages) {
    BifWitness w = family(n);
    for (const Point& x : probes) {
      if (norm(w.f(x)) > g(x)) {
        throw std::domain_error("domination violated at (" +
                                std::to_string(n) + ", " + point_label(x) +
                                ")");
      }
    }
    BintResult r = bint(w, opt);
    report.rows.push_back(
        {n, r.value, distance(r.value, report.limit_integral)});
  }
  return report;
}

StrongMeasWitness strong_meas_witness(const BifWitness& bf,
                                      std::vector<Point> probes, double eps,
                                      std::size_t check_start,
                                      std::size_t window) {
  double worst = 0.0;
  for (std::size_t n = check_start; n <= check_start + window; ++n) {
    SimpleFn s = bf.seq(n);
    for (const Point& x : probes) {
      worst = std::max(worst, distance(s(x), bf.f(x)));
    }
  }
  if (worst >= eps) throw NoConvergence("no convergence detected", worst);
  return {bf.f, bf.seq, std::move(probes), eps, check_start, window};
}

StrongMeasWitness compose_limits(const std::vector<StrongMeasWitness>& stages,
                                 const VectorFn& f, std::vector<Point> probes,
                                 double eps, std::size_t scan_limit) {
  if (stages.empty()) throw std::invalid_argument("no stages");
  auto picked = std::make_shared<std::vector<SimpleFn>>();
  picked->reserve(stages.size());
  for (std::size_t k = 0; k < stages.size(); ++k) {
    double target = 1.0 / double(k + 1);
    bool found = false;
    double last = 0.0;
    for (std::size_t n = 0; n <= scan_limit && !found; ++n) {
      SimpleFn s = stages[k].seq(n);
      double worst = 0.0;
      for (const Point& x : probes) {
        worst = std::max(worst, distance(s(x), stages[k].f(x)));
      }
      last = worst;
      if (worst < target) {
        picked->push_back(std::move(s));
        found = true;
      }
    }
    if (!found) throw NoConvergence("no convergence detected", last);
  }
  // The diagonal must land on f at the probes by the final stage.
  double worst = 0.0;
  for (const Point& x : probes) {
    worst = std::max(worst, distance(picked->back()(x), f(x)));
  }
  if (worst >= eps) throw NoConvergence("no convergence detected", worst);
  auto seq = [picked](std::size_t n) {
    return (*picked)[std::min(n, picked->size() - 1)];
  };
  return {f, seq, std::move(probes), eps, stages.size() - 1, 0};
}

}  // namespace bochner
