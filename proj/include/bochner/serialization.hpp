#pragma once

#include <json.hpp>

#include "bochner/simple_fn.hpp"

namespace bochner {

// JSON forms, all round-trip exact (doubles serialize with full precision):
//   extended real      number >= 0, or "inf"
//   carrier            {"carrier": "real" | "complex"} or
//                      {"carrier": "rvec", "dim": d}
//   vector             {"carrier": ..., "coords": [...]}
//   space              {"space": "finite", "masses": [...]} or
//                      {"space": "interval"}
//   set                {"kind": "points", "indices": [...]} or
//                      {"kind": "intervals", "pieces": [[lo, hi], ...]}
//   index function     {"kind": "table", "indices": [...]} or
//                      {"kind": "step", "breaks": [...], "indices": [...]}
//   simple function    {"space": ..., "which": ..., "values": [...]}
// Parsing re-runs construction, so invalid records are rejected with the
// same errors as the constructors.

nlohmann::json ext_real_to_json(const ExtReal& x);
ExtReal ext_real_from_json(const nlohmann::json& j);

nlohmann::json carrier_to_json(const Carrier& c);
Carrier carrier_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const MeasureSpace& s);
MeasureSpace space_from_json(const nlohmann::json& j);

nlohmann::json mset_to_json(const MSet& s);
MSet mset_from_json(const nlohmann::json& j);

nlohmann::json index_fn_to_json(const IndexFn& w);
IndexFn index_fn_from_json(const nlohmann::json& j);

nlohmann::json simple_fn_to_json(const SimpleFn& f);
SimpleFn simple_fn_from_json(const nlohmann::json& j);

}  // namespace bochner
