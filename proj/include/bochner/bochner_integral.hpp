#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>

#include "bochner/lebesgue.hpp"
#include "bochner/separability.hpp"
#include "bochner/sequences.hpp"

namespace bochner {

struct NotIntegrable : std::runtime_error {
  explicit NotIntegrable(std::size_t part)
      : std::runtime_error("infinite measure on nonzero part " +
                           std::to_string(part)),
        part_index(part) {}
  std::size_t part_index;
};

// Integral of a simple function: the slot-ordered sum of measure times
// value.  Infinite measure is fine under a zero value (it contributes
// nothing); under a nonzero value it raises NotIntegrable naming the slot.
Vector bint_sf(const SimpleFn& f);

// Candidates for nearest-prefix approximation: a countable sequence of
// vectors, normally a dense rational sequence, optionally with the target's
// own values spliced in after the zero element so that describable targets
// are reproduced exactly from some stage on.
class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  virtual const Carrier& carrier() const = 0;
  virtual bool zero_first() const = 0;
  virtual void coords_at(std::size_t n, double* out) const = 0;
  Vector at(std::size_t n) const;
};

std::shared_ptr<CandidateSource> dense_source(DenseSeq u);
std::shared_ptr<CandidateSource> augmented_source(DenseSeq u,
                                                  std::vector<Vector> values);

// Default candidates for a target: its own values spliced into a zero-first
// rational sequence when it is simple or tabulated, plain rationals
// otherwise.
std::shared_ptr<CandidateSource> default_source(const VectorFn& f);

// Stage n of the approximation maps every point x to the candidate u(j),
// j <= n, closest to f(x), smallest j on ties.  On the interval the rule is
// applied at the midpoints of a uniform dyadic grid of 2^resolution cells;
// on finite spaces at the atoms, where it is exact.
//
// This free function materializes the record in the reference layout: slot
// k < n holds u(k+1) and the last slot n holds u(0), which must be zero.
// Slot counts grow with n, so it is only for small stages; ApproxSequence
// below produces the compact equivalent.
SimpleFn approx_step(const VectorFn& f, const CandidateSource& u,
                     std::size_t n, int resolution);

// Incremental form of the same construction: candidates are incorporated
// one at a time into per-point best/second-best distances, with a bounding
// box prune that leaves results bit-identical to the full scan.  Records
// come out compacted: one slot per selected candidate (ascending candidate
// index) plus the zero slot, which is the same pointwise function as the
// reference layout and integrates to the same value.
//
// Stages must be visited in ascending order; asking for an earlier stage
// transparently replays the classification on an internal second instance,
// which stays cheap as long as each scan is itself ascending.
class ApproxSequence {
 public:
  ApproxSequence(VectorFn f, std::shared_ptr<const CandidateSource> u,
                 int resolution);

  const VectorFn& target() const { return f_; }
  const CandidateSource& source() const { return *u_; }
  int resolution() const { return resolution_; }
  std::size_t point_count() const { return count_; }

  SimpleFn record_at(std::size_t n);
  Vector integral_at(std::size_t n);  // bint_sf of record_at(n)

  // Measure of the points whose midpoint-rule selection is not certified
  // to agree with the pointwise rule at stage n: cells whose best/second
  // margin is within Lipschitz reach, plus cells containing a declared
  // breakpoint.  Zero on finite spaces.
  double misclassified_at(std::size_t n);

  // Index of every probe point (cells of the grid or atoms), evenly spaced.
  std::vector<std::size_t> probe_points(std::size_t count) const;
  // Current selection distance at a point, and the distance the zero
  // candidate achieved (the domination baseline).
  double distance_at(std::size_t point) const;
  double baseline_at(std::size_t point) const;
  Point coordinate_of(std::size_t point) const;

 private:
  void advance_to(std::size_t n);
  void process_candidate(std::size_t j);
  SimpleFn build_record() const;
  double misclassified_state() const;
  double box_distance_sq(const double* cand) const;
  void refresh_global_max();

  VectorFn f_;
  std::shared_ptr<const CandidateSource> u_;
  int resolution_;
  bool finite_;
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::vector<double>> soa_;
  std::vector<const double*> soa_ptrs_;
  std::vector<double> grid_;
  std::vector<bool> breakpoint_cell_;
  std::vector<double> best_sq_, second_sq_, baseline_sq_;
  std::vector<std::uint32_t> best_idx_;
  std::vector<double> box_lo_, box_hi_;
  double global_second_max_ = 0.0;
  std::size_t dirty_ = 0;
  std::size_t next_ = 0;
  std::unique_ptr<ApproxSequence> replay_;
  std::unordered_map<std::size_t, Vector> integral_memo_;
};

struct ApproxOptions {
  std::size_t n_max = 1000;
  int resolution = 8;
  int l1_depth = 10;
  std::size_t probe_count = 256;
  std::size_t bint_stride = 0;  // 0: n_max/512, at least 1
  bool with_evidence = true;
};

struct L1Row {
  std::size_t n = 0;
  double l1_lower = 0.0;  // certified bounds on integral of norm(f - s_n)
  double l1_upper = 0.0;
  bool integrable = false;
  double misclassified = 0.0;
  Vector integral;
};

struct ProbeEvidence {
  std::size_t count = 0;
  double final_max_dist = 0.0;
  bool dominated = false;  // selection distance <= zero-candidate distance
  bool meaningful = false;  // only claimed for zero-first sources
};

// An integrable function with its approximation evidence: the target, the
// stage-n records, their integrals, residual bounds, and probe data.  The
// algebra below derives new witnesses whose sequences combine the operands'
// records pointwise; their evidence starts empty and can be rebuilt.
struct BifWitness {
  VectorFn f;
  std::shared_ptr<ApproxSequence> approx{};
  std::function<SimpleFn(std::size_t)> seq{};
  std::function<Vector(std::size_t)> integral_seq{};
  std::size_t n_max = 0;
  ApproxOptions options{};
  std::vector<L1Row> evidence{};
  ProbeEvidence probes{};
  LintResult norm_bound{};
};

BifWitness bif_from_separable(const VectorFn& f, const ApproxOptions& opt,
                              std::shared_ptr<const CandidateSource> u = {});

// Stages 0, 1, 2, 4, ..., n_max.
std::vector<std::size_t> evidence_schedule(std::size_t n_max);
std::vector<L1Row> build_evidence(const BifWitness& bf,
                                  const std::vector<std::size_t>& schedule,
                                  int l1_depth);

BifWitness bif_plus(const BifWitness& a, const BifWitness& b);
BifWitness bif_scal(double c, const BifWitness& a);
BifWitness bif_neg(const BifWitness& a);
BifWitness bif_minus(const BifWitness& a, const BifWitness& b);

struct BintOptions {
  double eps = 1e-4;
  std::size_t window = 32;
  std::size_t stride = 0;  // 0: take it from the witness options
};

struct BintResult {
  Vector value;
  std::size_t stabilized_at = 0;
  double eps = 0.0;
  std::size_t window = 0;
  std::size_t stride = 0;
};

// Integral of the witness's target: the first integral along the record
// sequence whose sampled window is Cauchy at eps.  Throws NoConvergence
// when no stage up to n_max qualifies.
BintResult bint(const BifWitness& bf, const BintOptions& opt = {});

// Two witnesses for the same function must integrate to the same value:
// checks agreement of the targets at the probes first, then compares the
// integrals.
struct ExtCheck {
  double probe_max_diff = 0.0;
  double integral_diff = 0.0;
  Vector value_a, value_b;
};
ExtCheck bint_ext_check(const BifWitness& a, const BifWitness& b,
                        const std::vector<Point>& probes, double probe_tol,
                        const BintOptions& opt = {});

// Exact test: f vanishes outside a measure-zero set.  Decided from the
// slot measures, so it is precise on both space families.
bool sf_zero_ae(const SimpleFn& f);

struct DominatedRow {
  std::size_t n = 0;
  Vector integral;
  double diff = 0.0;  // distance to the limit integral
};

struct DominatedReport {
  double bound_upper = 0.0;  // certified upper bound on the integral of g
  Vector limit_integral;
  std::vector<DominatedRow> rows;
};

// Dominated convergence, checked: every family member must stay under g at
// the probes (error otherwise), g must certify finite, and the report lists
// how the integrals approach the limit's.
DominatedReport dominated_convergence_run(
    const std::function<BifWitness(std::size_t)>& family,
    const BifWitness& limit, const NonNegFn& g,
    const std::vector<std::size_t>& test_stages,
    const std::vector<Point>& probes, int g_depth,
    const BintOptions& opt = {});

// Strong measurability data: a record sequence converging to f pointwise,
// validated at the probes over [check_start, check_start + window].
struct StrongMeasWitness {
  VectorFn f;
  std::function<SimpleFn(std::size_t)> seq;
  std::vector<Point> probes;
  double eps = 0.0;
  std::size_t check_start = 0;
  std::size_t window = 0;
};

StrongMeasWitness strong_meas_witness(const BifWitness& bf,
                                      std::vector<Point> probes, double eps,
                                      std::size_t check_start,
                                      std::size_t window);

// Diagonal composition: given witnesses for f_k and the pointwise limit f
// of the f_k, picks for each k a stage close to f_k at the probes (within
// 1/(k+1), scanning at most scan_limit stages) and validates the resulting
// diagonal sequence against f.
StrongMeasWitness compose_limits(const std::vector<StrongMeasWitness>& stages,
                                 const VectorFn& f, std::vector<Point> probes,
                                 double eps, std::size_t scan_limit);

}  // namespace bochner
