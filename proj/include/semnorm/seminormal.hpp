#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semnorm/gcdpoly.hpp"
#include "semnorm/matrix.hpp"

namespace semnorm {

// b, c with b² = c³, checked at construction.
struct SeminormalWitnessRequest {
    RingValue b;
    RingValue c;
    SeminormalWitnessRequest(RingValue b_in, RingValue c_in);
};

// The unique a with a³ = b and a² = c when A contains one; resolution per
// constructor (fields and their products via the quasi-inverse, gcd domains
// by exact division, semigroup subrings by ambient division plus membership).
std::optional<RingValue> seminormal_witness(const SeminormalWitnessRequest& req);

// A tower of adjoined elements over a base ring, all living in an effective
// ambient domain. Step i is legal when steps[i]² and steps[i]³ lie in the
// stage below it and steps[i] itself does not.
struct AdjunctionTower {
    RingPtr base;
    RingPtr ambient;
    std::vector<RingValue> steps;   // ambient values
    unsigned degree_cap = 16;       // bound on stage-monomial exponents in memberships

    bool empty() const { return steps.empty(); }
};

// The effective ambient domain of a driver-supported ring (the ring itself
// for gcd-family domains, field[t] for a semigroup subring).
RingPtr driver_ambient(const RingPtr& a_ring);

// x in A[(steps_j)_{j<upto}], decided by degree-bounded linear solving in the
// ambient ring.
bool tower_contains(const AdjunctionTower& tower, size_t upto, const RingValue& x_ambient);

// A monic polynomial T^d + coeffs[d-1]·T^{d-1} + ... + coeffs[0] annihilating
// `element`, with coefficients in the span of monomials in the designated
// subring generators.
struct MonicCertificate {
    RingValue element;
    std::vector<RingValue> coeffs;  // ambient values, constant term first
    unsigned degree() const { return static_cast<unsigned>(coeffs.size()); }
};
// Exact substitution check: element^d + sum coeffs[j]·element^j = 0.
bool certificate_holds(const MonicCertificate& cert);

struct KroneckerReport {
    std::vector<MonicCertificate> certificates;  // one per coefficient product
    unsigned max_degree = 0;
};

// For every coefficient a of f and b of g, certify a·b integral over the
// subring generated by the coefficients of h = f·g: the certificate is found
// by degree-bounded linear solving in the ambient coefficient ring
// (multivariate inputs pass through the Kronecker substitution first).
// Exhausting degree_cap is a resource error, never a refutation.
KroneckerReport kronecker_check(const MultiPoly& f, const MultiPoly& g, unsigned degree_cap = 8);
// Same with extra generators admitted into the span (a larger subring of the
// same integral extension; certificates get cheaper).
KroneckerReport kronecker_check_with(const MultiPoly& f, const MultiPoly& g,
                                     const std::vector<RingValue>& extra_gens,
                                     unsigned degree_cap = 8);

// Generating set of {x in stage : x·c ∈ stage for every extension generator
// c}, valid as the conductor because the conductor is radical. Records the
// exponent N = (d-1)·q.
struct ConductorIdeal {
    std::vector<RingValue> generators;      // ambient values in the stage
    std::vector<RingValue> extension_gens;
    unsigned exponent_n = 0;
    bool is_unit_ideal = false;
};
ConductorIdeal conductor(const AdjunctionTower& stage, const std::vector<RingValue>& extension_gens,
                         unsigned d, unsigned degree_bound = 0);

// The closure computation: factor over the zero-dimensional ambient closure,
// collect the finite extension B generated by the factor coefficients,
// saturate the seminormal closure of A in B step by step, and stop when the
// conductor of the stage in B is the unit ideal.
struct ClosureOutcome {
    AdjunctionTower tower;
    Rank1Factorization fac;  // coefficients in the tower top (ambient-valued polynomials)
    std::vector<std::string> trace;
};
ClosureOutcome closure_tower(const RingPtr& a_ring, const Rank1Certificate& cert);

// Top-level driver. Requires P(0) = I_{n,1}. Factored results carry the
// factorization over A[X...] itself with every coefficient membership-checked;
// obstructed results carry the minimal tower plus the factorization over its
// top.
struct FactorizationResult {
    bool factored = false;
    Rank1Factorization fac;
    AdjunctionTower tower;
    std::vector<std::string> trace;
};
FactorizationResult factor_rank1_seminormal(const RingPtr& a_ring, const Rank1Certificate& cert);

}  // namespace semnorm
