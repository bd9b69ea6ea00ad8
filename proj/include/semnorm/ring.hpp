#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semnorm/numeric.hpp"

namespace semnorm {

class Ring;
class MultiPoly;
using RingPtr = std::shared_ptr<const Ring>;
using PolyPtr = std::shared_ptr<const MultiPoly>;

enum class RingKind {
    Integers,
    Rationals,
    PrimeField,
    Univariate,
    Multivariate,
    Product,
    SemigroupSubring,
    DualNumbers,
    Localization,
    ReducedQuotient,
    FractionField,
};

struct RingValue;
struct TuplePayload;
struct FracPayload;
struct LocPayload;

// Canonical payload per constructor:
//   Integers / PrimeField / ReducedQuotient(Z,n)  -> Int (residue in [0,n) for the modular cases)
//   Rationals                                     -> Rat in lowest terms
//   Univariate/Multivariate/SemigroupSubring/
//   DualNumbers/ReducedQuotient(K[t],m)           -> PolyPtr
//   Product                                       -> TuplePayload
//   FractionField(K[t])                           -> FracPayload (den monic, gcd(num,den)=1)
//   Localization                                  -> LocPayload (numerator not divisible by s)
using Payload = std::variant<std::monostate, Int, Rat, PolyPtr, std::shared_ptr<const TuplePayload>,
                             std::shared_ptr<const FracPayload>, std::shared_ptr<const LocPayload>>;

struct RingValue {
    RingPtr ring;
    Payload payload;

    RingValue() = default;
    RingValue(RingPtr r, Payload p) : ring(std::move(r)), payload(std::move(p)) {}
    bool valid() const { return ring != nullptr; }
};

struct TuplePayload {
    std::vector<RingValue> parts;
};
struct FracPayload {
    PolyPtr num;
    PolyPtr den;
};
struct LocPayload {
    RingValue num;       // value of the base ring
    unsigned den_pow;    // denominator is s^den_pow
};

class Ring {
  public:
    RingKind kind;

    Int char_p;                        // PrimeField prime
    RingPtr base;                      // poly/dual/loc/quotient/frac base; semigroup coefficient field
    std::vector<RingPtr> factors;      // product
    std::vector<std::string> vars;     // polynomial variables; semigroup/dual ambient variable
    std::vector<unsigned> semigroup;   // semigroup generators, gcd = 1
    unsigned dual_order = 0;           // DualNumbers nilpotency order k (eps^k = 0)
    RingValue loc_element;             // Localization: inverted element of base
    RingValue quot_modulus;            // ReducedQuotient: squarefree/radical modulus (Int payload or poly)

    bool equals(const Ring& other) const;
    std::string name() const;  // short human-readable form, e.g. "QQ[t]", "QQ[t^2,t^3]"

    // Variable names of every polynomial layer below (and including) this ring,
    // innermost first. Used by the flat text grammar.
    std::vector<std::string> flatten_vars() const;
};

bool ring_eq(const RingPtr& a, const RingPtr& b);
// The scalar ring at the bottom of the polynomial tower.
RingPtr ring_scalar(const RingPtr& r);

// ---- descriptor constructors (validated) ----
RingPtr ring_integers();
RingPtr ring_rationals();
RingPtr ring_prime_field(const Int& p);
RingPtr ring_univariate(RingPtr base, const std::string& var);
RingPtr ring_multivariate(RingPtr base, std::vector<std::string> vars);
RingPtr ring_product(std::vector<RingPtr> factors);
RingPtr ring_semigroup_subring(RingPtr field, std::vector<unsigned> gens, const std::string& var);
RingPtr ring_dual_numbers(RingPtr base, unsigned order, const std::string& var = "eps");
// Smart constructors: may collapse (quotient by 0 -> base, localization at unit -> base, ...).
RingPtr ring_localization(RingPtr base, const RingValue& inverted);
RingPtr ring_reduced_quotient(RingPtr base, const RingValue& modulus);
RingPtr ring_fraction_field(RingPtr base);
// The canonical trivial ring (1 = 0).
RingPtr ring_trivial();

// ---- predicates ----
bool ring_is_reduced(const RingPtr& r);
bool ring_is_trivial(const RingPtr& r);      // 1 = 0
bool ring_is_field(const RingPtr& r);        // decidably a field
bool ring_is_domain(const RingPtr& r);       // integral domain by constructor shape
bool ring_is_zdr(const RingPtr& r);          // zero-dimensional reduced (quasi-inverses available)
bool ring_is_pp(const RingPtr& r);           // annihilators generated by idempotents
bool ring_is_gcd_family(const RingPtr& r);   // gcd pp-ring with implemented gcds

// ---- element construction ----
RingValue ring_zero(const RingPtr& r);
RingValue ring_one(const RingPtr& r);
RingValue ring_from_int(const RingPtr& r, const Int& n);
RingValue ring_from_rat(const RingPtr& r, const Rat& q);  // rationals/fields of char 0 only
RingValue ring_tuple(const RingPtr& product, std::vector<RingValue> parts);
RingValue ring_poly_value(const RingPtr& r, const MultiPoly& payload);  // payload over base, canonicalized

// ---- arithmetic (same descriptor required on both sides) ----
RingValue ring_add(const RingValue& a, const RingValue& b);
RingValue ring_sub(const RingValue& a, const RingValue& b);
RingValue ring_mul(const RingValue& a, const RingValue& b);
RingValue ring_neg(const RingValue& a);
RingValue ring_pow(const RingValue& a, unsigned e);
bool ring_is_zero(const RingValue& a);
bool ring_is_one(const RingValue& a);
bool ring_value_eq(const RingValue& a, const RingValue& b);

// Multiplicative inverse when a is a unit.
std::optional<RingValue> ring_try_invert(const RingValue& a);
// Exact quotient a/b when one exists (canonical choice in non-domains).
std::optional<RingValue> ring_try_exact_div(const RingValue& a, const RingValue& b);
// The unique b with a²b = a and ab² = b, for zero-dimensional reduced rings
// in the family; nullopt when the ring gives no such operation.
std::optional<RingValue> ring_try_quasi_inverse(const RingValue& a);
// e_a with Ann(a) = <1 - e_a>, for pp-family rings.
RingValue ring_annihilator_idempotent(const RingValue& a);

// (u, a') with a = u·a', u a unit and a' the canonical associate
// (positive in Z, 1 in fields, monic leading scalar in polynomial towers,
// componentwise in products; 0 maps to (1, 0)).
std::pair<RingValue, RingValue> ring_unit_normalize(const RingValue& a);

// Payload accessors (checked).
const Int& value_int(const RingValue& v);
const Rat& value_rat(const RingValue& v);
const MultiPoly& value_poly(const RingValue& v);
const std::vector<RingValue>& value_tuple(const RingValue& v);
const FracPayload& value_frac(const RingValue& v);
const LocPayload& value_loc(const RingValue& v);

// Canonical homomorphic transport between rings related by construction:
// identity, base -> polynomial constants, Z -> anything via 1, subring ->
// ambient, base -> quotient/localization/fraction field, componentwise on
// products. Throws validation_error for unsupported pairs or when the value
// does not lie in the target (e.g. ambient polynomial outside a semigroup
// subring).
RingValue ring_transport(const RingValue& v, const RingPtr& target);
// True when ring_transport(v, target) would succeed.
bool ring_can_transport(const RingValue& v, const RingPtr& target);

// membership(x, sub): x an ambient value, sub a subring of x's ring in the
// supported pairings (semigroup subring inside field[t]; full ring).
bool ring_membership(const RingValue& x, const RingPtr& sub);

// Numerical semigroup helpers.
bool semigroup_contains(const std::vector<unsigned>& gens, unsigned n);
unsigned semigroup_conductor_bound(const std::vector<unsigned>& gens);  // least c with [c,inf) in S

// Canonical flat text form of a value ("p/q", "(a, b)", "1 - 1*t^4*X^4", ...).
std::string value_to_string(const RingValue& v);
// Parse the flat grammar back into a value of r.
RingValue value_from_string(const RingPtr& r, const std::string& text);

}  // namespace semnorm
