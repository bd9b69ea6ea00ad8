#pragma once

#include <json.hpp>

#include "semnorm/matrix.hpp"
#include "semnorm/seminormal.hpp"

namespace semnorm {

nlohmann::json ring_to_json(const RingPtr& r);
RingPtr ring_from_json(const nlohmann::json& j);

// { "n": int, "vars": [names], "ring": descriptor, "entries": [[poly,...],...] }
nlohmann::json matrix_to_json(const SquareMatrix& m);
// Parse with the embedded ring, or reparse the entries over an override ring.
SquareMatrix matrix_from_json(const nlohmann::json& j, RingPtr override_ring = nullptr);

// { "status": "factored"|"obstructed", "f": [...], "g": [...], "tower": [...] }
nlohmann::json result_to_json(const FactorizationResult& res);

}  // namespace semnorm
