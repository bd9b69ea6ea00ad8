#pragma once

#include <optional>
#include <vector>

#include "semnorm/idem.hpp"
#include "semnorm/matrix.hpp"
#include "semnorm/poly.hpp"

namespace semnorm {

// gcd in the gcd pp-ring family (Z, fields, polynomial towers over these,
// finite products, zero-dimensional reduced rings). Canonical representative:
// positive in Z, 1 in fields, primitive with unit-normalized leading scalar
// in polynomial towers, componentwise in products, the idempotent of <a,b> in
// zero-dimensional reduced rings.
RingValue base_gcd(const RingValue& a, const RingValue& b);

// gcd of the coefficients of f (an element of the coefficient ring; canonical
// as above; 0 for the zero polynomial).
struct Content {
    RingValue value;
};
Content content(const MultiPoly& f);

// f = c·g with g primitive over `base` and c in the fraction-level
// coefficient ring of f. For f = 0 the decomposition is c = 0, g = 1.
struct PrimitiveDecomposition {
    RingValue c;
    MultiPoly g;
};
PrimitiveDecomposition primitive_decompose(const MultiPoly& f, const RingPtr& base);

// Checks the content identity G(f)·G(g) ~ G(f·g) and returns the unit u with
// G(f)·G(g) = u·G(f·g). A failure is an invariant violation.
RingValue gauss_content(const MultiPoly& f, const MultiPoly& g);

// Quotient g/f in A[X] when f divides g there.
std::optional<MultiPoly> poly_divides(const MultiPoly& f, const MultiPoly& g);

// gcd in A[X...] (contents times primitive gcd, recursively univariate with
// the last declared variable outermost).
MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

// The row-gcd factorization of a certified rank-1 idempotent over A[X...] for
// A in the gcd family. Conjugates a regular entry into the corner, extracts
// f = gcd of the first row, and divides the rest out.
Rank1Factorization factor_rank1_gcd(const Rank1Certificate& cert);

// Factorization over a zero-dimensional reduced coefficient ring: fields
// directly, products componentwise, quotient presentations by growing a
// component tree on demand (each inversion of a zero-divisor splits the
// leaf). The result is normalized so f1(0) = g1(0) = 1 whenever P(0) =
// I_{n,1}.
struct ZdrFactorization {
    Rank1Factorization fac;
    // textual trace of the splits requested while computing, leaf by leaf
    std::vector<std::string> split_trace;
};
ZdrFactorization factor_over_zdr(const Rank1Certificate& cert);

// Cap on the component decomposition growth (default 2^12 leaves); exceeding
// it is a resource error, never a wrong answer.
size_t max_leaves();
void set_max_leaves(size_t n);

}  // namespace semnorm
