#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semnorm/ring.hpp"

namespace semnorm {

using Exps = std::vector<unsigned>;

unsigned exps_total(const Exps& e);
Exps exps_add(const Exps& a, const Exps& b);

// Graded lexicographic order: total degree first, then lexicographic with the
// first variable most significant. Term maps iterate ascending, so the
// canonical printed form starts at the constant term.
struct GrlexLess {
    bool operator()(const Exps& a, const Exps& b) const;
};

// Sparse multivariate polynomial with coefficients in one fixed ring.
// Invariants: no zero coefficient is stored, every exponent vector has the
// declared arity, all coefficients carry the declared ring.
class MultiPoly {
  public:
    using TermMap = std::map<Exps, RingValue, GrlexLess>;

    MultiPoly(RingPtr coeff_ring, std::vector<std::string> vars);
    static MultiPoly constant(RingPtr coeff_ring, std::vector<std::string> vars, RingValue c);
    static MultiPoly variable(RingPtr coeff_ring, std::vector<std::string> vars, size_t var_index,
                              unsigned exp = 1);
    static MultiPoly from_terms(RingPtr coeff_ring, std::vector<std::string> vars, TermMap terms);

    const RingPtr& coeff_ring() const { return coeff_ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    RingValue constant_value() const;  // the coefficient of X^0 (zero if absent)
    unsigned degree_in(size_t var_index) const;
    unsigned total_degree() const;     // 0 for the zero polynomial
    size_t term_count() const { return terms_.size(); }
    RingValue coeff(const Exps& e) const;

  private:
    RingPtr coeff_ring_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

MultiPoly poly_add(const MultiPoly& p, const MultiPoly& q);
MultiPoly poly_sub(const MultiPoly& p, const MultiPoly& q);
MultiPoly poly_neg(const MultiPoly& p);
MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q);
MultiPoly poly_scalar_mul(const RingValue& c, const MultiPoly& p);
MultiPoly poly_pow(const MultiPoly& p, unsigned e);
bool poly_eq(const MultiPoly& p, const MultiPoly& q);

// Substitute a coefficient-ring value for one variable (result keeps the
// variable list; its exponents become 0).
MultiPoly poly_substitute(const MultiPoly& p, size_t var_index, const RingValue& v);
// The constant coefficient p(0,...,0); a ring homomorphism.
RingValue poly_eval_at_zero(const MultiPoly& p);

// Exact quotient p/q when it exists. Leading-term cancellation; complete for
// domain coefficient rings (product rings are split before polynomial
// division reaches them).
std::optional<MultiPoly> poly_try_exact_div(const MultiPoly& p, const MultiPoly& q);

// Unit test per the reduced-ring rule (a unit is an invertible constant) with
// the dual-numbers extension (nilpotent higher coefficients, inverted by a
// truncated geometric series). Returns the inverse when p is a unit.
std::optional<MultiPoly> poly_try_invert(const MultiPoly& p);

// X_k -> T^(m^k), 1-indexed; injective on monomials when m exceeds every
// per-variable degree.
MultiPoly kronecker_substitute(const MultiPoly& p, unsigned m, const std::string& out_var = "T");
// Minimal m that is safe for every polynomial in the set.
unsigned kronecker_min_m(const std::vector<MultiPoly>& ps);

// View of p as a univariate polynomial in vars[var_index] with MultiPoly
// coefficients (in the same ring/vars, exponent 0 at var_index).
std::map<unsigned, MultiPoly> poly_univ_view(const MultiPoly& p, size_t var_index);
MultiPoly poly_from_univ_view(const RingPtr& ring, const std::vector<std::string>& vars,
                              size_t var_index, const std::map<unsigned, MultiPoly>& coeffs);

// All nonzero coefficients (term order).
std::vector<RingValue> poly_coefficients(const MultiPoly& p);

// ---- univariate helpers over a field coefficient ring ----
// These work on single-variable MultiPoly values whose coefficient ring is a
// decidable field; used for fraction-field and quotient-ring canonical forms.
struct FieldDivMod {
    MultiPoly quot;
    MultiPoly rem;
};
FieldDivMod field_poly_divmod(const MultiPoly& a, const MultiPoly& b);
MultiPoly field_poly_gcd(const MultiPoly& a, const MultiPoly& b);  // monic (or 0)
// g = gcd(a,b) monic together with u, v such that u*a + v*b = g.
struct FieldExtGcd {
    MultiPoly g, u, v;
};
FieldExtGcd field_poly_ext_gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly field_poly_derivative(const MultiPoly& a);
// Product of the distinct irreducible factors, monic. Handles p-th powers
// over prime fields via the Frobenius identity c^p = c.
MultiPoly field_poly_squarefree_part(const MultiPoly& a);
MultiPoly field_poly_monic(const MultiPoly& a);

}  // namespace semnorm
