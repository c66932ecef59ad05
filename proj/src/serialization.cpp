#include "bochner/serialization.hpp"

#include <stdexcept>

namespace bochner {

using nlohmann::json;

json ext_real_to_json(const ExtReal& x) {
  if (x.is_infinite()) return "inf";
  return x.to_real();
}

ExtReal ext_real_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtReal::infinity();
    throw std::invalid_argument("extended real: expected number or \"inf\"");
  }
  return ExtReal(j.get<double>());
}

json carrier_to_json(const Carrier& c) {
  switch (c.kind()) {
    case Carrier::Kind::real:
      return {{"carrier", "real"}};
    case Carrier::Kind::cplx:
      return {{"carrier", "complex"}};
    case Carrier::Kind::rvec:
      return {{"carrier", "rvec"}, {"dim", c.dim()}};
  }
  throw std::logic_error("unreachable");
}

Carrier carrier_from_json(const json& j) {
  const std::string kind = j.at("carrier").get<std::string>();
  if (kind == "real") return Carrier::real();
  if (kind == "complex") return Carrier::complex();
  if (kind == "rvec") return Carrier::rvec(j.at("dim").get<std::size_t>());
  throw std::invalid_argument("unknown carrier: " + kind);
}

json vector_to_json(const Vector& v) {
  json j = carrier_to_json(v.carrier());
  j["coords"] = v.coords();
  return j;
}

Vector vector_from_json(const json& j) {
  return Vector(carrier_from_json(j),
                j.at("coords").get<std::vector<double>>());
}

json space_to_json(const MeasureSpace& s) {
  if (!is_finite_space(s)) return {{"space", "interval"}};
  json masses = json::array();
  const FiniteSpace& fs = as_finite(s);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    masses.push_back(ext_real_to_json(fs.mass(i)));
  }
  return {{"space", "finite"}, {"masses", masses}};
}

MeasureSpace space_from_json(const json& j) {
  const std::string kind = j.at("space").get<std::string>();
  if (kind == "interval") return IntervalSpace{};
  if (kind == "finite") {
    std::vector<ExtReal> masses;
    for (const json& m : j.at("masses")) {
      masses.push_back(ext_real_from_json(m));
    }
    return FiniteSpace(std::move(masses));
  }
  throw std::invalid_argument("unknown space: " + kind);
}

json mset_to_json(const MSet& s) {
  if (std::holds_alternative<PointSet>(s)) {
    return {{"kind", "points"},
            {"indices", std::get<PointSet>(s).indices()}};
  }
  json pieces = json::array();
  for (const HalfOpen& p : std::get<IntervalSet>(s).pieces()) {
    pieces.push_back({p.lo, p.hi});
  }
  return {{"kind", "intervals"}, {"pieces", pieces}};
}

MSet mset_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "points") {
    return PointSet(j.at("indices").get<std::vector<std::size_t>>());
  }
  if (kind == "intervals") {
    std::vector<HalfOpen> pieces;
    for (const json& p : j.at("pieces")) {
      pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return IntervalSet(std::move(pieces));
  }
  throw std::invalid_argument("unknown set kind: " + kind);
}

json index_fn_to_json(const IndexFn& w) {
  if (std::holds_alternative<IndexTable>(w)) {
    return {{"kind", "table"},
            {"indices", std::get<IndexTable>(w).indices()}};
  }
  const StepIndexFn& step = std::get<StepIndexFn>(w);
  return {{"kind", "step"},
          {"breaks", step.breaks()},
          {"indices", step.indices()}};
}

IndexFn index_fn_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "table") {
    return IndexTable(j.at("indices").get<std::vector<std::size_t>>());
  }
  if (kind == "step") {
    return StepIndexFn(j.at("breaks").get<std::vector<double>>(),
                       j.at("indices").get<std::vector<std::size_t>>());
  }
  throw std::invalid_argument("unknown index function kind: " + kind);
}

json simple_fn_to_json(const SimpleFn& f) {
  json values = json::array();
  for (const Vector& v : f.values()) values.push_back(vector_to_json(v));
  return {{"space", space_to_json(f.space())},
          {"which", index_fn_to_json(f.which())},
          {"values", values}};
}

SimpleFn simple_fn_from_json(const json& j) {
  std::vector<Vector> values;
  for (const json& v : j.at("values")) values.push_back(vector_from_json(v));
  return SimpleFn(space_from_json(j.at("space")),
                  index_fn_from_json(j.at("which")), std::move(values));
}

}  // namespace bochner
