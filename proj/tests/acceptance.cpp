// Acceptance gate: ten checks, one line each, exit 1 if any fails.  Every
// tolerance is pinned here, next to the check that uses it, and each check
// carries a wall-clock budget that is part of the pass condition.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bochner/bochner_integral.hpp"

using namespace bochner;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& msg) {
    if (ok && !cond) {
      ok = false;
      why = msg;
    }
  }
};

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]));
  }
  return m;
}

// Multiples of 1/64 keep every product and partial sum below 2^53 exactly
// representable, so sums of such terms are independent of association order
// and "exact equality" claims are about semantics, not luck.
double dyadic(std::mt19937& rng, double span) {
  int steps = int(span * 64.0);
  return double(int(rng() % (2 * steps + 1)) - steps) / 64.0;
}

double dyadic_nonneg(std::mt19937& rng, double span) {
  return double(rng() % (std::size_t(span * 64.0) + 1)) / 64.0;
}

Vector random_value(std::mt19937& rng, const Carrier& c, double span,
                    bool dyadic_grid) {
  std::vector<double> coords(c.dim());
  std::uniform_real_distribution<double> u(-span, span);
  for (double& x : coords) x = dyadic_grid ? dyadic(rng, span) : u(rng);
  return Vector(c, std::move(coords));
}

struct RandomRecord {
  SimpleFn fn;
  std::vector<Point> probes;
};

// Random finite-space record; infinite atoms, when allowed, go to the last
// slot so the record stays integrable.
RandomRecord random_finite(std::mt19937& rng, const Carrier& carrier,
                           std::size_t max_atoms, std::size_t max_slots,
                           double mass_span, double value_span,
                           bool dyadic_grid, double inf_prob,
                           double zero_prob) {
  std::size_t atoms = 1 + rng() % max_atoms;
  std::size_t slots = 1 + rng() % max_slots;
  std::uniform_real_distribution<double> um(0.0, mass_span);
  std::uniform_real_distribution<double> uz(0.0, 1.0);

  std::vector<ExtReal> masses;
  std::vector<bool> infinite(atoms, false);
  for (std::size_t i = 0; i < atoms; ++i) {
    if (inf_prob > 0.0 && uz(rng) < inf_prob) {
      infinite[i] = true;
      masses.push_back(ExtReal::infinity());
    } else {
      masses.push_back(
          ExtReal(dyadic_grid ? dyadic_nonneg(rng, mass_span) : um(rng)));
    }
  }
  std::vector<Vector> values;
  for (std::size_t k = 0; k < slots; ++k) {
    if (zero_prob > 0.0 && uz(rng) < zero_prob) {
      values.push_back(Vector::zero(carrier));
    } else {
      values.push_back(random_value(rng, carrier, value_span, dyadic_grid));
    }
  }
  values.push_back(Vector::zero(carrier));
  std::vector<std::size_t> table;
  for (std::size_t i = 0; i < atoms; ++i) {
    table.push_back(infinite[i] ? slots : rng() % (slots + 1));
  }
  RandomRecord out{SimpleFn(FiniteSpace(masses), IndexTable(table), values),
                   {}};
  for (std::size_t i = 0; i < atoms; ++i) out.probes.push_back(Point::atom(i));
  return out;
}

// Random interval record with breakpoints on the 1/64 grid, so widths are
// dyadic and cell midpoints are probe-safe.
RandomRecord random_interval(std::mt19937& rng, const Carrier& carrier,
                             std::size_t max_cells, std::size_t max_slots,
                             double value_span, bool dyadic_grid,
                             double zero_prob) {
  std::size_t cells = 1 + rng() % max_cells;
  std::set<int> cuts;
  while (cuts.size() + 1 < cells) cuts.insert(1 + int(rng() % 63));
  std::vector<double> breaks{0.0};
  for (int c : cuts) breaks.push_back(double(c) / 64.0);
  breaks.push_back(1.0);

  std::size_t slots = 1 + rng() % max_slots;
  std::uniform_real_distribution<double> uz(0.0, 1.0);
  std::vector<Vector> values;
  for (std::size_t k = 0; k < slots; ++k) {
    if (zero_prob > 0.0 && uz(rng) < zero_prob) {
      values.push_back(Vector::zero(carrier));
    } else {
      values.push_back(random_value(rng, carrier, value_span, dyadic_grid));
    }
  }
  values.push_back(Vector::zero(carrier));
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    idx.push_back(rng() % (slots + 1));
  }
  RandomRecord out{
      SimpleFn(IntervalSpace{}, StepIndexFn(breaks, idx), values), {}};
  for (int k = 0; k < 64; ++k) {
    out.probes.push_back(Point::coord(double(k) / 64.0 + 1.0 / 128.0));
  }
  return out;
}

Carrier pick_carrier(std::mt19937& rng, std::size_t max_dim) {
  std::size_t d = 1 + rng() % max_dim;
  return d == 1 ? Carrier::real() : Carrier::rvec(d);
}

// ---- 1. slot-major integral vs atom-major oracle --------------------------

bool crit_oracle(Check& c) {
  std::mt19937 rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    Carrier carrier = pick_carrier(rng, 4);
    RandomRecord r = random_finite(rng, carrier, 50, 8, 10.0, 4.0,
                                   /*dyadic=*/true, /*inf=*/0.15, 0.1);
    c.require(sf_is_integrable(r.fn), "random record not integrable");
    const FiniteSpace& sp = as_finite(r.fn.space());
    Vector oracle = Vector::zero(carrier);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      if (sp.mass(i).is_infinite()) continue;  // value is zero there
      oracle = oracle + sp.mass(i).to_real() * r.fn(Point::atom(i));
    }
    double d = max_abs_diff(bint_sf(r.fn), oracle);
    c.require(d <= 1e-12, "oracle gap " + std::to_string(d));
    if (!c.ok) return false;
  }
  return c.ok;
}

// ---- 2. linearity, norm bound, re-representation --------------------------

bool crit_algebra(Check& c) {
  std::mt19937 rng(2002);

  // Linearity of the integral: componentwise within 1e-10.
  for (int trial = 0; trial < 1000; ++trial) {
    Carrier carrier = pick_carrier(rng, 3);
    bool interval = trial % 4 == 3;
    RandomRecord rf =
        interval ? random_interval(rng, carrier, 6, 3, 2.0, false, 0.0)
                 : random_finite(rng, carrier, 12, 5, 4.0, 2.0, false, 0.0,
                                 0.0);
    // Both operands must live on one space: interval spaces all compare
    // equal, finite ones by masses, so g reuses f's space directly.
    SimpleFn g = [&]() -> SimpleFn {
      if (interval) return random_interval(rng, carrier, 6, 3, 2.0, false, 0.0).fn;
      std::size_t slots = 1 + rng() % 5;
      std::vector<Vector> vals;
      for (std::size_t k = 0; k < slots; ++k) {
        vals.push_back(random_value(rng, carrier, 2.0, false));
      }
      vals.push_back(Vector::zero(carrier));
      std::vector<std::size_t> t;
      for (std::size_t i = 0; i < as_finite(rf.fn.space()).size(); ++i) {
        t.push_back(rng() % (slots + 1));
      }
      return SimpleFn(rf.fn.space(), IndexTable(t), vals);
    }();
    std::uniform_real_distribution<double> us(-2.0, 2.0);
    double a = us(rng), b = us(rng);
    Vector lhs = bint_sf(sf_plus(sf_scal(a, rf.fn), sf_scal(b, g)));
    Vector rhs = a * bint_sf(rf.fn) + b * bint_sf(g);
    double d = max_abs_diff(lhs, rhs);
    c.require(d <= 1e-10, "linearity gap " + std::to_string(d));
    if (!c.ok) return false;
  }

  // Norm of the integral vs integral of the norm: within 1e-12.
  for (int trial = 0; trial < 1000; ++trial) {
    Carrier carrier = pick_carrier(rng, 3);
    RandomRecord r =
        trial % 4 == 3
            ? random_interval(rng, carrier, 6, 4, 1.0, false, 0.1)
            : random_finite(rng, carrier, 10, 4, 2.0, 1.0, false, 0.1, 0.1);
    double lhs = norm(bint_sf(r.fn));
    ExtReal rhs = lint_p_simple(sf_norm(r.fn));
    c.require(rhs.is_finite(), "norm integral infinite on finite masses");
    c.require(lhs <= rhs.to_real() + 1e-12,
              "norm bound violated by " +
                  std::to_string(lhs - rhs.to_real()));
    if (!c.ok) return false;
  }

  // Removing zero slots and permuting slots never moves the integral
  // (exactly, on dyadic data).
  for (int trial = 0; trial < 1000; ++trial) {
    Carrier carrier = pick_carrier(rng, 3);
    RandomRecord r =
        trial % 4 == 3
            ? random_interval(rng, carrier, 6, 5, 2.0, true, 0.4)
            : random_finite(rng, carrier, 12, 5, 4.0, 2.0, true, 0.1, 0.4);
    Vector base = bint_sf(r.fn);
    c.require(bint_sf(sf_remove_zeros(r.fn)) == base,
              "remove_zeros moved the integral");

    std::size_t m = r.fn.max_which();
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = i;
    std::vector<Vector> vals;
    for (std::size_t i = 0; i < m; ++i) vals.push_back(r.fn.value(perm[i]));
    vals.push_back(Vector::zero(carrier));
    auto remap = [&](std::vector<std::size_t> idx) {
      for (std::size_t& w : idx) w = w == m ? m : inv[w];
      return idx;
    };
    SimpleFn shuffled =
        std::holds_alternative<IndexTable>(r.fn.which())
            ? SimpleFn(r.fn.space(),
                       IndexTable(remap(
                           std::get<IndexTable>(r.fn.which()).indices())),
                       vals)
            : SimpleFn(
                  r.fn.space(),
                  StepIndexFn(
                      std::get<StepIndexFn>(r.fn.which()).breaks(),
                      remap(std::get<StepIndexFn>(r.fn.which()).indices())),
                  vals);
    for (const Point& x : r.probes) {
      c.require(shuffled(x) == r.fn(x), "permuted record not pointwise equal");
    }
    c.require(bint_sf(shuffled) == base, "permutation moved the integral");
    if (!c.ok) return false;
  }
  return c.ok;
}

// ---- 3. record axioms under every constructor and operation ---------------

bool axioms_ok(const SimpleFn& f) {
  if (!f.values().back().is_zero()) return false;
  if (index_fn_max(f.which()) > f.max_which()) return false;
  for (const Vector& v : f.values()) {
    if (!(v.carrier() == f.carrier())) return false;
  }
  return true;
}

bool crit_axioms(Check& c) {
  std::mt19937 rng(3003);
  for (int trial = 0; trial < 1000; ++trial) {
    Carrier carrier = pick_carrier(rng, 3);
    bool interval = trial % 3 == 2;
    RandomRecord rf =
        interval ? random_interval(rng, carrier, 6, 4, 2.0, false, 0.4)
                 : random_finite(rng, carrier, 8, 4, 4.0, 2.0, false, 0.1,
                                 0.4);
    SimpleFn f = rf.fn;
    SimpleFn g = interval
                     ? random_interval(rng, carrier, 6, 4, 2.0, false, 0.4).fn
                     : SimpleFn(f.space(),
                                IndexTable([&] {
                                  std::vector<std::size_t> t;
                                  for (std::size_t i = 0;
                                       i < as_finite(f.space()).size(); ++i) {
                                    t.push_back(rng() % 3);
                                  }
                                  return t;
                                }()),
                                {random_value(rng, carrier, 2.0, false),
                                 Vector::zero(carrier),
                                 Vector::zero(carrier)});

    auto check = [&](const SimpleFn& s, const char* label) {
      if (!axioms_ok(s)) {
        c.require(false, std::string("axiom broken after ") + label);
      }
    };
    check(f, "ctor f");
    check(g, "ctor g");
    check(sf_plus(f, g), "sf_plus");
    check(sf_minus(f, g), "sf_minus");
    check(sf_neg(f), "sf_neg");
    check(sf_scal(-1.5, f), "sf_scal");
    SimpleFn nf = sf_norm(f);
    check(nf, "sf_norm");
    check(sf_power(nf, 2.0), "sf_power");
    check(sf_const(f.space(), random_value(rng, carrier, 2.0, false)),
          "sf_const");
    check(sf_zero(f.space(), carrier), "sf_zero");
    if (interval) {
      double b = double(1 + rng() % 63) / 64.0;
      check(sf_indicator(f.space(), IntervalSet({{0.0, b}}),
                         random_value(rng, carrier, 2.0, false)),
            "sf_indicator");
      check(sf_from_partition(
                f.space(),
                {IntervalSet({{0.0, b}}), IntervalSet({{b, 1.0}})},
                {random_value(rng, carrier, 2.0, false),
                 random_value(rng, carrier, 2.0, false)}),
            "sf_from_partition");
    } else {
      std::size_t atoms = as_finite(f.space()).size();
      std::vector<std::size_t> head, tail;
      std::size_t split = 1 + rng() % atoms;
      for (std::size_t i = 0; i < atoms; ++i) {
        (i < split ? head : tail).push_back(i);
      }
      check(sf_indicator(f.space(), PointSet(head),
                         random_value(rng, carrier, 2.0, false)),
            "sf_indicator");
      std::vector<MSet> parts{PointSet(head)};
      std::vector<Vector> pv{random_value(rng, carrier, 2.0, false)};
      if (!tail.empty()) {
        parts.push_back(PointSet(tail));
        pv.push_back(random_value(rng, carrier, 2.0, false));
      }
      check(sf_from_partition(f.space(), parts, pv), "sf_from_partition");
    }

    SimpleFn rz = sf_remove_zeros(f);
    check(rz, "sf_remove_zeros");
    for (std::size_t k = 0; k < rz.max_which(); ++k) {
      c.require(!rz.value(k).is_zero(), "zero value below last after removal");
      c.require(rz.part_measure(k) != ExtReal(0.0),
                "empty slot below last after removal");
    }
    for (const Point& x : rf.probes) {
      c.require(rz(x) == f(x), "removal changed the function");
    }
    if (!c.ok) return false;
  }
  return c.ok;
}

// ---- 4. product-partition pairing -----------------------------------------

bool crit_pairing(Check& c) {
  for (std::size_t nb = 0; nb <= 20; ++nb) {
    for (std::size_t i = 0; i <= 20; ++i) {
      for (std::size_t j = 0; j <= nb; ++j) {
        auto [a, b] = unpair_index(pair_index(i, j, nb), nb);
        c.require(a == i && b == j, "pair/unpair mismatch");
      }
    }
  }
  for (std::size_t na = 0; na <= 20; ++na) {
    for (std::size_t nb = 0; nb <= 20; ++nb) {
      c.require(pair_index(na, nb, nb) == (na + 1) * (nb + 1) - 1,
                "joint last slot is not the pair of last slots");
    }
  }
  return c.ok;
}

// ---- 5. interval construction end to end ----------------------------------

bool crit_construction(Check& c) {
  VectorFn f = VectorFn::lipschitz(
      Carrier::rvec(2),
      [](double x) { return Vector(Carrier::rvec(2), {x, 1.0 - x}); },
      /*lipschitz=*/1.5);
  ApproxOptions opt;
  opt.n_max = 1000000;
  opt.resolution = 12;
  opt.l1_depth = 10;
  opt.probe_count = 1000;
  BifWitness bf = bif_from_separable(f, opt);

  c.require(bf.evidence.size() == evidence_schedule(opt.n_max).size(),
            "evidence row count");
  c.require(bf.evidence.back().l1_upper < 1e-2,
            "final certified residual " +
                std::to_string(bf.evidence.back().l1_upper));
  for (const L1Row& row : bf.evidence) {
    c.require(row.integrable, "stage record not integrable");
    c.require(row.l1_lower <= row.l1_upper + 1e-15, "residual bounds crossed");
  }
  c.require(bf.probes.count == 1000, "probe count");
  c.require(bf.probes.meaningful && bf.probes.dominated,
            "final-stage domination");

  // Integral before the full replay walk keeps the replay instance cheap.
  BintResult r = bint(bf, {/*eps=*/5e-4, /*window=*/16, /*stride=*/0});
  Vector half(Carrier::rvec(2), {0.5, 0.5});
  double gap = max_abs_diff(r.value, half);
  c.require(gap <= 1e-3, "integral off by " + std::to_string(gap));

  // Domination at the probe midpoints for every tested stage: the selected
  // candidate can never beat the zero candidate's own distance.
  std::vector<Point> pts;
  for (std::size_t p : bf.approx->probe_points(1000)) {
    pts.push_back(bf.approx->coordinate_of(p));
  }
  for (std::size_t n : evidence_schedule(opt.n_max)) {
    SimpleFn s = bf.seq(n);
    c.require(sf_is_integrable(s), "stage record not integrable");
    for (const Point& x : pts) {
      Vector fx = f(x);
      c.require(norm(fx - s(x)) <= norm(fx), "domination failed at a probe");
    }
    if (!c.ok) return false;
  }
  return c.ok;
}

// ---- 6. vector integral vs scalar lower integral --------------------------

bool crit_lint_match(Check& c) {
  std::mt19937 rng(6006);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t atoms = 1 + rng() % 20;
    std::vector<ExtReal> masses;
    std::vector<double> table_vals;
    std::vector<Vector> table;
    for (std::size_t i = 0; i < atoms; ++i) {
      masses.push_back(ExtReal(dyadic_nonneg(rng, 4.0)));
      double v = dyadic_nonneg(rng, 4.0);
      table_vals.push_back(v);
      table.push_back(Vector::real(v));
    }
    MeasureSpace sp = FiniteSpace(masses);
    VectorFn f = VectorFn::tabulated(sp, table);
    ApproxOptions opt;
    opt.n_max = 128;
    opt.l1_depth = 6;
    opt.bint_stride = 1;
    opt.with_evidence = false;
    BifWitness bf = bif_from_separable(f, opt);
    // The window spans every splice stage, so the estimator cannot settle
    // on a plateau that a later exact value would still move.
    BintResult r = bint(bf, {/*eps=*/1e-15, /*window=*/60, /*stride=*/1});

    LintResult l = lint_p(NonNegFn::tabulated(sp, table_vals), 6);
    c.require(l.error_bound == 0.0, "finite-space lower integral inexact");
    c.require(r.value == Vector::real(l.value.to_real()),
              "vector and scalar integrals differ");
    if (!c.ok) return false;
  }

  // f(x) = x on the interval against the closed form 1/2.
  VectorFn id = VectorFn::lipschitz(
      Carrier::real(), [](double x) { return Vector::real(x); }, 1.0);
  ApproxOptions opt;
  opt.n_max = 50000;
  opt.resolution = 12;
  opt.l1_depth = 14;
  opt.with_evidence = false;
  BifWitness bf = bif_from_separable(id, opt);
  BintResult r = bint(bf, {/*eps=*/5e-4, /*window=*/16, /*stride=*/0});
  double b = r.value.scalar();
  c.require(std::fabs(b - 0.5) <= 1e-3,
            "interval integral " + std::to_string(b));

  LintResult l = lint_p(NonNegFn::lipschitz([](double x) { return x; }, 1.0),
                        14);
  double lv = l.value.to_real();
  c.require(lv <= 0.5 && 0.5 <= lv + l.error_bound,
            "lower integral does not enclose 1/2");
  c.require(l.error_bound <= 1e-3, "enclosure wider than 1e-3");
  c.require(std::fabs(b - lv) <= 1e-3, "integrals disagree beyond 1e-3");
  return c.ok;
}

// ---- 7. zero integral iff vanishing a.e. ----------------------------------

bool crit_zero_ae(Check& c) {
  const Carrier c2 = Carrier::rvec(2);
  const Vector e1(c2, {1.0, 0.0});
  const ExtReal mass_opts[3] = {ExtReal(0.0), ExtReal(1.0),
                                ExtReal::infinity()};
  for (std::size_t atoms = 1; atoms <= 6; ++atoms) {
    std::size_t mass_codes = 1;
    for (std::size_t i = 0; i < atoms; ++i) mass_codes *= 3;
    for (std::size_t mc = 0; mc < mass_codes; ++mc) {
      for (std::size_t vc = 0; vc < (std::size_t{1} << atoms); ++vc) {
        std::vector<ExtReal> masses;
        std::vector<std::size_t> table;
        bool vanishes = true;
        std::size_t m = mc;
        for (std::size_t i = 0; i < atoms; ++i) {
          masses.push_back(mass_opts[m % 3]);
          bool carries = (vc >> i) & 1;
          table.push_back(carries ? 0 : 1);
          if (carries && mass_opts[m % 3] != ExtReal(0.0)) vanishes = false;
          m /= 3;
        }
        SimpleFn f(FiniteSpace(masses), IndexTable(table),
                   {e1, Vector::zero(c2)});
        LintResult l = lint_p(norm_fn(VectorFn::from_simple(f)), 4);
        c.require(l.error_bound == 0.0, "finite-space integral inexact");
        bool zero_integral = l.value == ExtReal(0.0);
        c.require(zero_integral == vanishes,
                  "zero integral does not match vanishing a.e.");
        c.require(sf_zero_ae(f) == vanishes, "record-level test disagrees");
        if (!c.ok) return false;
      }
    }
  }
  return c.ok;
}

// ---- 8. dominated convergence rate ----------------------------------------

bool crit_dominated(Check& c) {
  VectorFn f = VectorFn::lipschitz(
      Carrier::rvec(2),
      [](double x) { return Vector(Carrier::rvec(2), {x, 1.0 - x}); }, 1.5);
  ApproxOptions opt;
  opt.n_max = 200000;
  opt.resolution = 12;
  opt.l1_depth = 8;
  opt.with_evidence = false;
  BifWitness base = bif_from_separable(f, opt);

  auto family = [&base](std::size_t n) {
    return bif_scal(1.0 + 1.0 / double(n + 1), base);
  };
  NonNegFn g = nn_scal(2.0, norm_fn(base.f));
  std::vector<Point> probes;
  for (int k = 0; k < 100; ++k) {
    probes.push_back(Point::coord(double(k) / 100.0 + 0.005));
  }
  std::vector<std::size_t> stages{0, 1, 2, 4, 8, 16, 32, 64, 128, 200};
  DominatedReport rep = dominated_convergence_run(
      family, base, g, stages, probes, /*g_depth=*/10,
      {/*eps=*/5e-4, /*window=*/16, /*stride=*/0});

  c.require(rep.bound_upper > 0.0 && rep.bound_upper < 2.0,
            "dominating bound out of range");
  c.require(rep.rows.size() == stages.size(), "row count");
  const double unit = std::sqrt(0.5);  // norm of the limit integral
  for (const DominatedRow& row : rep.rows) {
    double predicted = unit / double(row.n + 1);
    double rel = std::fabs(row.diff - predicted) / predicted;
    c.require(rel <= 0.2, "stage " + std::to_string(row.n) +
                              " off the predicted rate by " +
                              std::to_string(rel));
  }
  c.require(rep.rows.back().n == 200, "final stage");
  c.require(rep.rows.back().diff < 5e-3,
            "final gap " + std::to_string(rep.rows.back().diff));
  return c.ok;
}

// ---- 9. weak separability -------------------------------------------------

bool crit_separability(Check& c) {
  std::mt19937 rng(9009);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<Vector> samples;
  for (int k = 0; k < 1000; ++k) samples.push_back(Vector::real(u(rng)));
  DenseSeq seq(Carrier::real());
  WeakSepReport rep = weak_sep_check(seq, samples, 1e-2, 1000000);
  c.require(rep.ok, "a sample stayed uncovered at eps 1e-2");

  std::set<std::pair<long long, long long>> seen;
  for (std::size_t n = 0; n < 10000; ++n) {
    Rational r = nth_rational(n);
    c.require(seen.insert({r.num, r.den}).second, "enumeration repeated");
    if (!c.ok) return false;
  }
  return c.ok;
}

// ---- 10. infinite measure, exhaustively -----------------------------------

bool crit_infinite(Check& c) {
  for (std::size_t atoms = 1; atoms <= 4; ++atoms) {
    for (std::size_t pos = 0; pos < atoms; ++pos) {
      for (int kind = 0; kind < 2; ++kind) {
        Carrier carrier = kind == 0 ? Carrier::real() : Carrier::rvec(2);
        Vector v = kind == 0 ? Vector::real(1.5)
                             : Vector(carrier, {1.5, -0.5});
        std::vector<ExtReal> masses;
        double finite_total = 0.0;
        for (std::size_t i = 0; i < atoms; ++i) {
          if (i == pos) {
            masses.push_back(ExtReal::infinity());
          } else {
            masses.push_back(ExtReal(double(i + 1) / 4.0));
            finite_total += double(i + 1) / 4.0;
          }
        }
        std::vector<std::size_t> to_last, to_first;
        for (std::size_t i = 0; i < atoms; ++i) {
          to_last.push_back(i == pos ? 1 : 0);
          to_first.push_back(i == pos ? 0 : 1);
        }
        SimpleFn good(FiniteSpace(masses), IndexTable(to_last),
                      {v, Vector::zero(carrier)});
        c.require(sf_is_integrable(good), "masked record not integrable");
        c.require(bint_sf(good) == finite_total * v,
                  "finite-part sum not exact");

        SimpleFn bad(FiniteSpace(masses), IndexTable(to_first),
                     {v, Vector::zero(carrier)});
        c.require(!sf_is_integrable(bad), "bad record passed integrability");
        c.require(sf_first_infinite_part(bad) == 0, "wrong offending part");
        bool threw = false;
        try {
          bint_sf(bad);
        } catch (const NotIntegrable& e) {
          threw = true;
          c.require(e.part_index == 0, "wrong part index in error");
          c.require(std::string(e.what()) ==
                        "infinite measure on nonzero part 0",
                    "wrong error message");
        }
        c.require(threw, "integral did not fail on infinite nonzero part");
        if (!c.ok) return false;
      }
    }
  }
  return c.ok;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  bool (*fn)(Check&);
};

}  // namespace

int main() {
  const Criterion table[] = {
      {1, "integral matches pointwise oracle on random finite spaces", 5.0,
       crit_oracle},
      {2, "linearity, norm bound, and re-representation invariance", 10.0,
       crit_algebra},
      {3, "record axioms survive every constructor and operation", 5.0,
       crit_axioms},
      {4, "partition pairing is a bijection with matching last slot", 1.0,
       crit_pairing},
      {5, "interval construction converges with certified residuals", 60.0,
       crit_construction},
      {6, "vector integral agrees with the scalar lower integral", 30.0,
       crit_lint_match},
      {7, "zero integral exactly characterizes vanishing a.e.", 1.0,
       crit_zero_ae},
      {8, "dominated family tracks its limit at the predicted rate", 120.0,
       crit_dominated},
      {9, "dense rationals reach uniform samples, enumeration injective",
       30.0, crit_separability},
      {10, "infinite mass integrates exactly or fails with the part named",
       1.0, crit_infinite},
  };

  int failures = 0;
  for (const Criterion& cr : table) {
    Check chk;
    double t0 = now_s();
    bool ok = false;
    try {
      ok = cr.fn(chk);
    } catch (const std::exception& e) {
      chk.ok = false;
      chk.why = std::string("unhandled: ") + e.what();
    }
    double dt = now_s() - t0;
    ok = ok && chk.ok;
    if (ok && dt >= cr.budget_s) {
      ok = false;
      chk.why = "over budget";
    }
    std::printf("[%s] %2d. %-60s %6.2fs / %.0fs%s%s\n", ok ? "PASS" : "FAIL",
                cr.id, cr.name, dt, cr.budget_s, ok ? "" : "  -- ",
                ok ? "" : chk.why.c_str());
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
