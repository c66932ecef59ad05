// Batch experiment driver: reads a scenario file, runs one subcommand, and
// emits a CSV table plus a JSON summary echoing the fully resolved
// configuration.  Output is deterministic: fixed seeds, no timestamps, and
// doubles printed with %.17g, so rerunning a scenario reproduces the CSV
// byte for byte.
//
// Exit codes: 0 ok, 1 numeric failure, 2 config error.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bochner/bochner_integral.hpp"
#include "bochner/serialization.hpp"

using nlohmann::json;
using namespace bochner;

namespace {

// Anything wrong with the scenario or flags; maps to exit 2 with the
// offending field path in the message.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(path + "." + key, "unknown field");
  }
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

std::size_t need_index(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) bad(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

// ---- scenario -------------------------------------------------------------

struct Knobs {
  double eps = 1e-4;
  int depth = 10;
  int resolution = 8;
  std::size_t n_max = 1000;
  std::size_t window = 32;
  std::size_t stride = 0;  // 0: n_max / 512, at least 1
  std::size_t probe_count = 256;
};

struct SampleCfg {
  std::size_t count = 256;
  std::size_t dim = 1;
  double lo = -1.0;
  double hi = 1.0;
  std::uint32_t seed = 1;
};

struct DenseCfg {
  bool zero_first = true;
  SignOrder order = SignOrder::plus_first;
  bool augment = true;
};

struct Scenario {
  MeasureSpace space = IntervalSpace{};
  bool has_space = false;
  json function;  // validated when a subcommand builds it
  DenseCfg dense;
  Knobs knobs;
  SampleCfg samples;
};

MeasureSpace parse_space(const json& j) {
  if (!j.is_object()) bad("space", "expected an object");
  reject_unknown(j, "space", {"space", "masses"});
  if (!j.contains("space") || !j["space"].is_string()) {
    bad("space.space", "expected \"finite\" or \"interval\"");
  }
  std::string kind = j["space"].get<std::string>();
  if (kind == "interval") {
    if (j.contains("masses")) bad("masses", "interval space takes no masses");
    return IntervalSpace{};
  }
  if (kind != "finite") bad("space.space", "unknown space: " + kind);
  if (!j.contains("masses") || !j["masses"].is_array()) {
    bad("masses", "expected an array");
  }
  std::vector<ExtReal> masses;
  const json& arr = j["masses"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string at = "masses[" + std::to_string(i) + "]";
    const json& e = arr[i];
    if (e.is_string()) {
      if (e.get<std::string>() != "inf") bad(at, "expected number or \"inf\"");
      masses.push_back(ExtReal::infinity());
    } else if (e.is_number()) {
      double v = e.get<double>();
      if (std::isnan(v)) bad(at, "mass is NaN");
      if (v < 0.0) bad(at, "negative mass");
      masses.push_back(ExtReal(v));
    } else {
      bad(at, "expected number or \"inf\"");
    }
  }
  if (masses.empty()) bad("masses", "finite space needs at least one atom");
  return FiniteSpace(std::move(masses));
}

DenseCfg parse_dense(const json& j) {
  DenseCfg d;
  if (j.is_null()) return d;
  if (!j.is_object()) bad("dense", "expected an object");
  reject_unknown(j, "dense", {"zero_first", "sign_order", "augment"});
  if (j.contains("zero_first")) {
    if (!j["zero_first"].is_boolean()) bad("dense.zero_first", "expected a bool");
    d.zero_first = j["zero_first"].get<bool>();
  }
  if (j.contains("sign_order")) {
    std::string s = j["sign_order"].is_string()
                        ? j["sign_order"].get<std::string>()
                        : std::string();
    if (s == "plus-first") {
      d.order = SignOrder::plus_first;
    } else if (s == "minus-first") {
      d.order = SignOrder::minus_first;
    } else {
      bad("dense.sign_order", "expected \"plus-first\" or \"minus-first\"");
    }
  }
  if (j.contains("augment")) {
    if (!j["augment"].is_boolean()) bad("dense.augment", "expected a bool");
    d.augment = j["augment"].get<bool>();
  }
  return d;
}

Knobs parse_knobs(const json& j) {
  Knobs k;
  if (j.is_null()) return k;
  if (!j.is_object()) bad("knobs", "expected an object");
  reject_unknown(j, "knobs",
                 {"eps", "depth", "resolution", "n_max", "window", "stride",
                  "probe_count"});
  if (j.contains("eps")) k.eps = need_number(j["eps"], "knobs.eps");
  if (j.contains("depth")) {
    k.depth = int(need_index(j["depth"], "knobs.depth"));
  }
  if (j.contains("resolution")) {
    k.resolution = int(need_index(j["resolution"], "knobs.resolution"));
  }
  if (j.contains("n_max")) k.n_max = need_index(j["n_max"], "knobs.n_max");
  if (j.contains("window")) k.window = need_index(j["window"], "knobs.window");
  if (j.contains("stride")) k.stride = need_index(j["stride"], "knobs.stride");
  if (j.contains("probe_count")) {
    k.probe_count = need_index(j["probe_count"], "knobs.probe_count");
  }
  return k;
}

void validate_knobs(const Knobs& k) {
  if (!(k.eps > 0.0)) bad("knobs.eps", "must be positive");
  if (k.depth < 1 || k.depth > 26) bad("knobs.depth", "must be in [1, 26]");
  if (k.resolution < 1 || k.resolution > 22) {
    bad("knobs.resolution", "must be in [1, 22]");
  }
  if (k.window < 1) bad("knobs.window", "must be positive");
  if (k.probe_count < 1) bad("knobs.probe_count", "must be positive");
}

SampleCfg parse_samples(const json& j) {
  SampleCfg s;
  if (j.is_null()) return s;
  if (!j.is_object()) bad("samples", "expected an object");
  reject_unknown(j, "samples", {"count", "dim", "lo", "hi", "seed"});
  if (j.contains("count")) s.count = need_index(j["count"], "samples.count");
  if (j.contains("dim")) s.dim = need_index(j["dim"], "samples.dim");
  if (j.contains("lo")) s.lo = need_number(j["lo"], "samples.lo");
  if (j.contains("hi")) s.hi = need_number(j["hi"], "samples.hi");
  if (j.contains("seed")) {
    s.seed = std::uint32_t(need_index(j["seed"], "samples.seed"));
  }
  if (s.count < 1) bad("samples.count", "must be positive");
  if (s.dim < 1) bad("samples.dim", "must be positive");
  if (!(s.lo < s.hi)) bad("samples.lo", "lo must be below hi");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("scenario", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad("scenario", std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) bad("scenario", "expected a JSON object");
  reject_unknown(j, "scenario",
                 {"space", "function", "dense", "knobs", "samples"});
  Scenario s;
  if (j.contains("space")) {
    s.space = parse_space(j["space"]);
    s.has_space = true;
  }
  if (j.contains("function")) s.function = j["function"];
  s.dense = parse_dense(j.value("dense", json()));
  s.knobs = parse_knobs(j.value("knobs", json()));
  s.samples = parse_samples(j.value("samples", json()));
  return s;
}

// ---- function catalog -----------------------------------------------------

Vector parse_value(const json& a, const std::string& path) {
  if (!a.is_array() || a.empty()) {
    bad(path, "expected a nonempty array of numbers");
  }
  std::vector<double> coords;
  for (std::size_t i = 0; i < a.size(); ++i) {
    coords.push_back(
        need_number(a[i], path + "[" + std::to_string(i) + "]"));
  }
  Carrier c =
      coords.size() == 1 ? Carrier::real() : Carrier::rvec(coords.size());
  try {
    return Vector(c, std::move(coords));
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

struct BuiltFn {
  std::string catalog;
  VectorFn fn;
  std::optional<SimpleFn> record;  // set when the catalog item is simple
};

BuiltFn build_function(const json& f, Scenario& sc, bool allow_family);

BuiltFn build_catalog(const std::string& catalog, const json& f,
                      Scenario& sc) {
  const MeasureSpace& space = sc.space;
  if (catalog == "constant") {
    reject_unknown(f, "function", {"catalog", "value"});
    if (!f.contains("value")) bad("function.value", "missing");
    Vector v = parse_value(f["value"], "function.value");
    SimpleFn s = sf_const(space, v);
    return {catalog, VectorFn::from_simple(s), s};
  }
  if (catalog == "record") {
    reject_unknown(f, "function", {"catalog", "record"});
    if (!f.contains("record")) bad("function.record", "missing");
    if (sc.has_space) {
      bad("space", "omit it for catalog \"record\"; the record carries its own space");
    }
    try {
      SimpleFn s = simple_fn_from_json(f["record"]);
      sc.space = s.space();
      sc.has_space = true;
      return {catalog, VectorFn::from_simple(s), s};
    } catch (const std::exception& e) {
      bad("function.record", e.what());
    }
  }
  if (catalog == "linear-pair") {
    reject_unknown(f, "function", {"catalog"});
    if (is_finite_space(space)) {
      bad("function.catalog", "linear-pair needs the interval space");
    }
    VectorFn fn = VectorFn::lipschitz(
        Carrier::rvec(2),
        [](double x) { return Vector(Carrier::rvec(2), {x, 1.0 - x}); }, 1.5);
    return {catalog, fn, std::nullopt};
  }
  if (catalog == "indicator") {
    reject_unknown(f, "function", {"catalog", "set", "value"});
    if (!f.contains("set")) bad("function.set", "missing");
    if (!f.contains("value")) bad("function.value", "missing");
    MSet set = [&]() -> MSet {
      try {
        return mset_from_json(f["set"]);
      } catch (const std::exception& e) {
        bad("function.set", e.what());
      }
    }();
    Vector v = parse_value(f["value"], "function.value");
    try {
      SimpleFn s = sf_indicator(space, set, v);
      return {catalog, VectorFn::from_simple(s), s};
    } catch (const std::invalid_argument& e) {
      bad("function.set", e.what());
    }
  }
  if (catalog == "table") {
    reject_unknown(f, "function", {"catalog", "values"});
    if (!is_finite_space(space)) {
      bad("function.catalog", "table needs a finite space");
    }
    if (!f.contains("values") || !f["values"].is_array()) {
      bad("function.values", "expected an array");
    }
    const json& arr = f["values"];
    std::size_t atoms = as_finite(space).size();
    if (arr.size() != atoms) {
      bad("function.values", "need exactly one value per atom");
    }
    std::vector<Vector> values;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string at = "function.values[" + std::to_string(i) + "]";
      values.push_back(arr[i].is_number()
                           ? Vector::real(need_number(arr[i], at))
                           : parse_value(arr[i], at));
      if (!(values[i].carrier() == values[0].carrier())) {
        bad(at, "all values must share one carrier");
      }
    }
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < atoms; ++i) table.push_back(i);
    std::vector<Vector> slots = values;
    slots.push_back(Vector::zero(values[0].carrier()));
    SimpleFn s(space, IndexTable(std::move(table)), std::move(slots));
    return {catalog, VectorFn::tabulated(space, std::move(values)), s};
  }
  bad("function.catalog", "unknown catalog entry: " + catalog);
}

// A scaled family c_n * base with c_n = 1 + offset / (n + 1); only the
// dominated subcommand accepts it.
struct FamilyCfg {
  BuiltFn base;
  double offset = 1.0;
  double g_factor = 2.0;
  std::vector<std::size_t> stages{0, 1, 2, 4, 8, 16, 32, 64, 128, 200};
};

BuiltFn build_function(const json& f, Scenario& sc, bool allow_family) {
  if (!f.is_object()) bad("function", "expected an object");
  if (!f.contains("catalog") || !f["catalog"].is_string()) {
    bad("function.catalog", "expected a string");
  }
  std::string catalog = f["catalog"].get<std::string>();
  if (catalog == "scaled-family" && !allow_family) {
    bad("function.catalog", "scaled-family is only for dominated");
  }
  return build_catalog(catalog, f, sc);
}

FamilyCfg build_family(const json& f, Scenario& sc) {
  if (!f.is_object()) bad("function", "expected an object");
  std::string catalog = f.value("catalog", "");
  if (catalog != "scaled-family") {
    bad("function.catalog", "dominated needs the scaled-family catalog");
  }
  reject_unknown(f, "function",
                 {"catalog", "base", "offset", "g_factor", "stages"});
  if (!f.contains("base")) bad("function.base", "missing");
  FamilyCfg cfg{build_function(f["base"], sc, false)};
  if (f.contains("offset")) {
    cfg.offset = need_number(f["offset"], "function.offset");
    if (!(cfg.offset > 0.0)) bad("function.offset", "must be positive");
  }
  if (f.contains("g_factor")) {
    cfg.g_factor = need_number(f["g_factor"], "function.g_factor");
    if (!(cfg.g_factor > 0.0)) bad("function.g_factor", "must be positive");
  }
  if (f.contains("stages")) {
    if (!f["stages"].is_array() || f["stages"].empty()) {
      bad("function.stages", "expected a nonempty array");
    }
    cfg.stages.clear();
    for (std::size_t i = 0; i < f["stages"].size(); ++i) {
      cfg.stages.push_back(need_index(
          f["stages"][i], "function.stages[" + std::to_string(i) + "]"));
    }
  }
  return cfg;
}

// ---- witness assembly -----------------------------------------------------

ApproxOptions approx_opts(const Knobs& k, bool with_evidence) {
  ApproxOptions o;
  o.n_max = k.n_max;
  o.resolution = k.resolution;
  o.l1_depth = k.depth;
  o.probe_count = k.probe_count;
  o.bint_stride = k.stride;
  o.with_evidence = with_evidence;
  return o;
}

BintOptions bint_opts(const Knobs& k) {
  return BintOptions{k.eps, k.window, k.stride};
}

std::shared_ptr<const CandidateSource> make_source(const VectorFn& f,
                                                   const DenseCfg& d) {
  if (d.augment && !d.zero_first) {
    bad("dense.augment", "augmentation needs a zero-first sequence");
  }
  DenseSeq u(f.carrier(), d.zero_first, d.order);
  if (d.augment) {
    if (f.cls() == VectorFn::Class::simple) {
      return augmented_source(std::move(u), f.as_simple().values());
    }
    if (f.cls() == VectorFn::Class::tabulated) {
      return augmented_source(std::move(u), f.table());
    }
  }
  return dense_source(std::move(u));
}

// ---- output ---------------------------------------------------------------

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Fixed schema shared by every subcommand: n, one column per component,
// then l1, l1_bound, flags.  See docs/scenario_schema.md for what each
// subcommand stores in them.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::size_t components)
      : out_(path), components_(components) {
    if (!out_) bad("out", "cannot write " + path.string());
    out_ << "n";
    for (std::size_t i = 0; i < components_; ++i) out_ << ",v" << i;
    out_ << ",l1,l1_bound,flags\n";
  }

  void row(std::size_t n, const std::vector<double>& comps, double l1,
           double l1_bound, unsigned flags) {
    out_ << n;
    for (std::size_t i = 0; i < components_; ++i) {
      out_ << ',' << fmt(i < comps.size() ? comps[i] : 0.0);
    }
    out_ << ',' << fmt(l1) << ',' << fmt(l1_bound) << ',' << flags << '\n';
  }

  void row(std::size_t n, const Vector& v, double l1, double l1_bound,
           unsigned flags) {
    std::vector<double> comps;
    for (std::size_t i = 0; i < v.dim(); ++i) comps.push_back(v[i]);
    row(n, comps, l1, l1_bound, flags);
  }

 private:
  std::ofstream out_;
  std::size_t components_;
};

json vector_json(const Vector& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

json knobs_json(const Knobs& k) {
  return json{{"eps", k.eps},         {"depth", k.depth},
              {"resolution", k.resolution}, {"n_max", k.n_max},
              {"window", k.window},   {"stride", k.stride},
              {"probe_count", k.probe_count}};
}

json dense_json(const DenseCfg& d) {
  return json{{"zero_first", d.zero_first},
              {"sign_order", d.order == SignOrder::plus_first
                                 ? "plus-first"
                                 : "minus-first"},
              {"augment", d.augment}};
}

json samples_json(const SampleCfg& s) {
  return json{{"count", s.count},
              {"dim", s.dim},
              {"lo", s.lo},
              {"hi", s.hi},
              {"seed", s.seed}};
}

json config_json(const Scenario& s) {
  json c{{"space", space_to_json(s.space)},
         {"dense", dense_json(s.dense)},
         {"knobs", knobs_json(s.knobs)},
         {"samples", samples_json(s.samples)}};
  if (!s.function.is_null()) c["function"] = s.function;
  return c;
}

void write_summary(const std::filesystem::path& path, const std::string& sub,
                   const Scenario& s, json result) {
  json out{{"subcommand", sub},
           {"config", config_json(s)},
           {"result", std::move(result)}};
  std::ofstream f(path);
  if (!f) bad("out", "cannot write " + path.string());
  f << out.dump(2) << '\n';
}

std::vector<Point> default_probes(const MeasureSpace& space,
                                  std::size_t count) {
  std::vector<Point> pts;
  if (is_finite_space(space)) {
    for (std::size_t i = 0; i < as_finite(space).size(); ++i) {
      pts.push_back(Point::atom(i));
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      pts.push_back(
          Point::coord((double(k) + 0.5) / double(count)));
    }
  }
  return pts;
}

// ---- subcommands ----------------------------------------------------------

int run_integrate_sf(Scenario& sc, const std::filesystem::path& out) {
  BuiltFn built = build_function(sc.function, sc, false);
  if (!built.record) {
    bad("function.catalog",
        built.catalog + " does not describe a simple-function record");
  }
  const SimpleFn& s = *built.record;
  Vector value = bint_sf(s);  // NotIntegrable propagates as a numeric failure
  ExtReal l1 = lint_p_simple(sf_norm(s));
  bool integrable = sf_is_integrable(s);
  CsvWriter csv(out / "integrate-sf.csv", value.dim());
  double l1_out = l1.is_infinite()
                      ? std::numeric_limits<double>::infinity()
                      : l1.to_real();
  csv.row(0, value, l1_out, 0.0, integrable ? 1u : 0u);
  write_summary(out / "integrate-sf_summary.json", "integrate-sf", sc,
                json{{"value", vector_json(value)},
                     {"l1", ext_real_to_json(l1)},
                     {"integrable", integrable},
                     {"zero_ae", sf_zero_ae(s)}});
  return 0;
}

int run_approx(Scenario& sc, const std::filesystem::path& out) {
  BuiltFn built = build_function(sc.function, sc, false);
  validate_knobs(sc.knobs);
  BifWitness bf = bif_from_separable(built.fn, approx_opts(sc.knobs, true),
                                     make_source(built.fn, sc.dense));
  CsvWriter csv(out / "approx.csv", built.fn.carrier().dim());
  json rows = json::array();
  for (const L1Row& r : bf.evidence) {
    unsigned flags = (r.integrable ? 1u : 0u) |
                     (r.misclassified > 0.0 ? 2u : 0u);
    csv.row(r.n, r.integral, r.l1_lower, r.l1_upper - r.l1_lower, flags);
    rows.push_back(json{{"n", r.n},
                        {"integral", vector_json(r.integral)},
                        {"l1_lower", r.l1_lower},
                        {"l1_upper", r.l1_upper},
                        {"integrable", r.integrable},
                        {"misclassified", r.misclassified}});
  }
  const L1Row& last = bf.evidence.back();
  write_summary(
      out / "approx_summary.json", "approx", sc,
      json{{"stages", bf.evidence.size()},
           {"rows", std::move(rows)},
           {"final", json{{"n", last.n},
                          {"l1_lower", last.l1_lower},
                          {"l1_upper", last.l1_upper},
                          {"integral", vector_json(last.integral)},
                          {"misclassified", last.misclassified}}},
           {"norm_bound",
            json{{"value", ext_real_to_json(bf.norm_bound.value)},
                 {"error_bound", bf.norm_bound.error_bound}}},
           {"probes", json{{"count", bf.probes.count},
                           {"final_max_dist", bf.probes.final_max_dist},
                           {"dominated", bf.probes.dominated},
                           {"meaningful", bf.probes.meaningful}}}});
  return 0;
}

int run_bint(Scenario& sc, const std::filesystem::path& out) {
  BuiltFn built = build_function(sc.function, sc, false);
  validate_knobs(sc.knobs);
  BifWitness bf = bif_from_separable(built.fn, approx_opts(sc.knobs, false),
                                     make_source(built.fn, sc.dense));
  BintResult r = bint(bf, bint_opts(sc.knobs));  // NoConvergence -> exit 1
  CsvWriter csv(out / "bint.csv", built.fn.carrier().dim());
  csv.row(r.stabilized_at, r.value, 0.0, 0.0, 1u);
  write_summary(out / "bint_summary.json", "bint", sc,
                json{{"value", vector_json(r.value)},
                     {"stabilized_at", r.stabilized_at},
                     {"eps", r.eps},
                     {"window", r.window},
                     {"stride", r.stride}});
  return 0;
}

int run_compare_lebesgue(Scenario& sc, const std::filesystem::path& out) {
  BuiltFn built = build_function(sc.function, sc, false);
  validate_knobs(sc.knobs);
  if (!built.record || !(built.fn.carrier() == Carrier::real())) {
    bad("function.catalog",
        "compare-lebesgue needs a scalar simple-function record");
  }
  for (const Vector& v : built.record->values()) {
    if (v.scalar() < 0.0) {
      bad("function", "compare-lebesgue needs nonnegative values");
    }
  }
  LintResult l = lint_p(NonNegFn::from_simple(*built.record), sc.knobs.depth);
  BifWitness bf = bif_from_separable(built.fn, approx_opts(sc.knobs, false),
                                     make_source(built.fn, sc.dense));
  BintResult r = bint(bf, bint_opts(sc.knobs));
  double lv = l.value.is_infinite()
                  ? std::numeric_limits<double>::infinity()
                  : l.value.to_real();
  double diff = std::fabs(r.value.scalar() - lv);
  bool agree = diff <= sc.knobs.eps;
  CsvWriter csv(out / "compare-lebesgue.csv", 1);
  csv.row(r.stabilized_at, r.value, lv, l.error_bound, agree ? 1u : 0u);
  write_summary(out / "compare-lebesgue_summary.json", "compare-lebesgue",
                sc,
                json{{"bint", vector_json(r.value)},
                     {"lint", ext_real_to_json(l.value)},
                     {"lint_error_bound", l.error_bound},
                     {"diff", diff},
                     {"tolerance", sc.knobs.eps},
                     {"agree", agree}});
  if (!agree) {
    std::fprintf(stderr, "integrals disagree: |diff| = %s > eps = %s\n",
                 fmt(diff).c_str(), fmt(sc.knobs.eps).c_str());
    return 1;
  }
  return 0;
}

int run_dominated(Scenario& sc, const std::filesystem::path& out) {
  FamilyCfg fam = build_family(sc.function, sc);
  validate_knobs(sc.knobs);
  BifWitness base =
      bif_from_separable(fam.base.fn, approx_opts(sc.knobs, false),
                         make_source(fam.base.fn, sc.dense));
  auto family = [&](std::size_t n) {
    return bif_scal(1.0 + fam.offset / double(n + 1), base);
  };
  NonNegFn g = nn_scal(fam.g_factor, norm_fn(fam.base.fn));
  std::vector<Point> probes =
      default_probes(sc.space, sc.knobs.probe_count);
  DominatedReport rep =
      dominated_convergence_run(family, base, g, fam.stages, probes,
                                sc.knobs.depth, bint_opts(sc.knobs));
  CsvWriter csv(out / "dominated.csv", fam.base.fn.carrier().dim());
  for (const DominatedRow& row : rep.rows) {
    csv.row(row.n, row.integral, row.diff, rep.bound_upper, 1u);
  }
  json rows = json::array();
  for (const DominatedRow& row : rep.rows) {
    rows.push_back(json{{"n", row.n},
                        {"integral", vector_json(row.integral)},
                        {"diff", row.diff}});
  }
  write_summary(out / "dominated_summary.json", "dominated", sc,
                json{{"bound_upper", rep.bound_upper},
                     {"limit_integral", vector_json(rep.limit_integral)},
                     {"offset", fam.offset},
                     {"g_factor", fam.g_factor},
                     {"rows", std::move(rows)}});
  return 0;
}

int run_sep_check(const Scenario& sc, const std::filesystem::path& out) {
  validate_knobs(sc.knobs);
  const SampleCfg& cfg = sc.samples;
  Carrier carrier =
      cfg.dim == 1 ? Carrier::real() : Carrier::rvec(cfg.dim);
  // Raw generator draws scaled by hand: deterministic output independent of
  // any library distribution implementation.
  std::mt19937 rng(cfg.seed);
  std::vector<Vector> samples;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::vector<double> coords;
    for (std::size_t d = 0; d < cfg.dim; ++d) {
      double unit = double(rng()) * (1.0 / 4294967296.0);
      coords.push_back(cfg.lo + (cfg.hi - cfg.lo) * unit);
    }
    samples.push_back(Vector(carrier, std::move(coords)));
  }
  DenseSeq seq(carrier, sc.dense.zero_first, sc.dense.order);
  WeakSepReport rep =
      weak_sep_check(seq, samples, sc.knobs.eps, sc.knobs.n_max);
  CsvWriter csv(out / "sep-check.csv", cfg.dim);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    csv.row(i, samples[i], double(rep.first_index[i]), rep.eps,
            rep.found[i] ? 1u : 0u);
  }
  std::size_t found = 0;
  for (bool b : rep.found) found += b ? 1 : 0;
  write_summary(out / "sep-check_summary.json", "sep-check", sc,
                json{{"ok", rep.ok},
                     {"found", found},
                     {"missed", samples.size() - found},
                     {"worst_sample", rep.worst_sample},
                     {"worst_first_index",
                      rep.first_index[rep.worst_sample]},
                     {"max_n", rep.max_n}});
  if (!rep.ok) {
    std::fprintf(stderr,
                 "sample %zu has no eps-close element up to n_max\n",
                 rep.worst_sample);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Experiment driver: runs one scenario and emits CSV + JSON summaries"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<double> eps_flag;
  std::optional<int> depth_flag;
  std::optional<int> resolution_flag;
  std::optional<std::size_t> n_max_flag;

  const char* names[] = {"integrate-sf", "approx",    "bint",
                         "compare-lebesgue", "dominated", "sep-check"};
  const char* descs[] = {
      "integrate a simple-function record and report its L1 size",
      "emit the stagewise convergence table for a separable target",
      "estimate the vector integral from the approximating sequence",
      "check the vector integral against the scalar lower integral",
      "run a dominated scaled family against its limit",
      "scan the dense sequence for eps-closeness to random samples"};
  for (std::size_t i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--eps", eps_flag, "override knobs.eps");
    sub->add_option("--depth", depth_flag, "override knobs.depth");
    sub->add_option("--resolution", resolution_flag,
                    "override knobs.resolution");
    sub->add_option("--n-max", n_max_flag, "override knobs.n_max");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors
  }

  try {
    Scenario sc = load_scenario(scenario_path);
    if (eps_flag) sc.knobs.eps = *eps_flag;
    if (depth_flag) sc.knobs.depth = *depth_flag;
    if (resolution_flag) sc.knobs.resolution = *resolution_flag;
    if (n_max_flag) sc.knobs.n_max = *n_max_flag;

    std::filesystem::path out(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) bad("out", "cannot create " + out.string());

    std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "integrate-sf") return run_integrate_sf(sc, out);
    if (sub == "approx") return run_approx(sc, out);
    if (sub == "bint") return run_bint(sc, out);
    if (sub == "compare-lebesgue") return run_compare_lebesgue(sc, out);
    if (sub == "dominated") return run_dominated(sc, out);
    return run_sep_check(sc, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    // A scenario that builds invalid objects is a config problem.
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
