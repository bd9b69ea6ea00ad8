#pragma once

#include <string>
#include <vector>

#include "semnorm/poly.hpp"

namespace semnorm {

// Canonical text form of a polynomial: terms in ascending graded-lex order
// over the combined variable list (coefficient-ring variables first, then the
// polynomial's own variables), each term as coefficient then *-joined
// var^exp factors, e.g. "1 - 1*t^4*X^4".
std::string poly_to_string(const MultiPoly& p);

// Parse the grammar back over the given coefficient ring and variable list.
// Throws parse_error naming the offending token.
MultiPoly poly_from_string(const RingPtr& coeff_ring, const std::vector<std::string>& vars,
                           const std::string& text);

// The flat terms of a value over its ring's flattened variable list: exponent
// vector -> scalar coefficient. Fails for values that have no flat form
// (localizations, fractions with true denominators).
std::map<Exps, RingValue, GrlexLess> value_flat_terms(const RingValue& v);

}  // namespace semnorm
