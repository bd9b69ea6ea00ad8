#include <doctest.h>

#include "semnorm/polytext.hpp"
#include "semnorm/seminormal.hpp"
#include "support.hpp"

using namespace semnorm;

namespace {

RingPtr qq() { return ring_rationals(); }
RingPtr qq_t() { return ring_univariate(ring_rationals(), "t"); }
RingPtr cusp() { return ring_semigroup_subring(ring_rationals(), {2, 3}, "t"); }
RingPtr sg345() { return ring_semigroup_subring(ring_rationals(), {3, 4, 5}, "t"); }

SquareMatrix schanuel_over(const RingPtr& sub) {
    RingValue a = value_from_string(qq_t(), "t");
    RingValue b = value_from_string(sub, "t^3");
    RingValue c = value_from_string(sub, "t^2");
    return schanuel_matrix(a, b, c);
}

}  // namespace

TEST_CASE("seminormal witnesses per constructor") {
    // in QQ[t]: b = t^3, c = t^2 has the witness t
    RingPtr qt = qq_t();
    SeminormalWitnessRequest req(value_from_string(qt, "t^3"), value_from_string(qt, "t^2"));
    auto w = seminormal_witness(req);
    REQUIRE(w);
    CHECK(value_to_string(*w) == "1*t");

    // zero pair
    auto wz = seminormal_witness(SeminormalWitnessRequest(ring_zero(qt), ring_zero(qt)));
    REQUIRE(wz);
    CHECK(ring_is_zero(*wz));

    // in QQ[t^2,t^3] the same pair has no witness (t is missing): the
    // obstruction of the cusp
    RingPtr a = cusp();
    auto wc = seminormal_witness(
        SeminormalWitnessRequest(value_from_string(a, "t^3"), value_from_string(a, "t^2")));
    CHECK_FALSE(wc.has_value());

    // product of fields: componentwise b·c^(-1)
    RingPtr r2 = ring_product({qq(), qq()});
    auto wp = seminormal_witness(SeminormalWitnessRequest(value_from_string(r2, "(8, 0)"),
                                                          value_from_string(r2, "(4, 0)")));
    REQUIRE(wp);
    CHECK(value_to_string(*wp) == "(2, 0)");

    // malformed request
    CHECK_THROWS_AS(SeminormalWitnessRequest(ring_one(qt), value_from_string(qt, "t")),
                    validation_error);
}

TEST_CASE("uniqueness law: x^2 = y^2 and x^3 = y^3 force x = y in reduced rings") {
    semnorm::testing::Rng rng(97);
    std::vector<RingPtr> rings = {qq(), qq_t(), cusp(), ring_product({qq(), ring_prime_field(5)}),
                                  ring_reduced_quotient(ring_integers(), ring_from_int(ring_integers(), 30))};
    for (const auto& r : rings) {
        CAPTURE(r->name());
        for (int i = 0; i < 80; ++i) {
            RingValue x = semnorm::testing::random_value(r, rng);
            RingValue y = semnorm::testing::random_value(r, rng);
            if (ring_value_eq(ring_mul(x, x), ring_mul(y, y)) &&
                ring_value_eq(ring_mul(ring_mul(x, x), x), ring_mul(ring_mul(y, y), y)))
                CHECK(ring_value_eq(x, y));
            // constructed coincidences: y = x must always pass
            CHECK(ring_value_eq(x, x));
        }
    }
}

TEST_CASE("tower membership by linear solving") {
    AdjunctionTower tower;
    tower.base = cusp();
    tower.ambient = qq_t();
    tower.steps = {value_from_string(qq_t(), "t")};

    CHECK(tower_contains(tower, 0, value_from_string(qq_t(), "t^2")));
    CHECK_FALSE(tower_contains(tower, 0, value_from_string(qq_t(), "t")));
    CHECK(tower_contains(tower, 1, value_from_string(qq_t(), "t")));
    CHECK(tower_contains(tower, 1, value_from_string(qq_t(), "1 + t + 5*t^4")));
    CHECK(tower_contains(tower, 0, value_from_string(qq_t(), "3 - 2*t^2")));
}

TEST_CASE("kronecker integrality certificates: generic quadratic pair") {
    RingPtr r = ring_multivariate(qq(), {"u", "v"});
    MultiPoly f = poly_from_string(r, {"X"}, "u + X");
    MultiPoly g = poly_from_string(r, {"X"}, "v + X");
    KroneckerReport rep = kronecker_check(f, g);
    CHECK(rep.max_degree <= 2);
    for (const auto& cert : rep.certificates) CHECK(certificate_holds(cert));
    // the product u·1 = u has the classical monic T^2 - (u+v)T + uv
    bool found_u = false;
    for (const auto& cert : rep.certificates)
        if (value_to_string(cert.element) == "1*u") {
            found_u = true;
            CHECK(cert.degree() == 2);
        }
    CHECK(found_u);
}

TEST_CASE("kronecker certificates for constants have degree 1") {
    RingPtr r = qq();
    MultiPoly f = poly_from_string(r, {"X"}, "3");
    MultiPoly g = poly_from_string(r, {"X"}, "5");
    KroneckerReport rep = kronecker_check(f, g);
    CHECK(rep.max_degree == 1);
}

TEST_CASE("kronecker certificates on the cusp data") {
    // coefficients of f1 = 1 + tX against the subring generated by the first
    // row of the schanuel matrix: t is certified by the degree-2 monic T^2 - t^2
    RingPtr amb = qq_t();
    MultiPoly f1 = poly_from_string(amb, {"X"}, "1 + t*X");
    MultiPoly g1 = poly_from_string(amb, {"X"}, "1 - t*X + t^2*X^2 - t^3*X^3");
    std::vector<RingValue> row_coeffs = {
        value_from_string(amb, "t^2"),
        value_from_string(amb, "t^3"),
    };
    KroneckerReport rep = kronecker_check_with(f1, g1, row_coeffs);
    for (const auto& cert : rep.certificates) CHECK(certificate_holds(cert));
    bool found_t = false;
    for (const auto& cert : rep.certificates)
        if (value_to_string(cert.element) == "1*t") {
            found_t = true;
            CHECK(cert.degree() == 2);
            CHECK(value_to_string(cert.coeffs[0]) == "-1*t^2");
            CHECK(ring_is_zero(cert.coeffs[1]));
        }
    CHECK(found_t);
}

TEST_CASE("kronecker substitution route for multivariate inputs") {
    RingPtr r = ring_multivariate(qq(), {"u", "v"});
    MultiPoly f = poly_from_string(r, {"X1", "X2"}, "u + X1*X2");
    MultiPoly g = poly_from_string(r, {"X1", "X2"}, "v + X1");
    KroneckerReport rep = kronecker_check(f, g);
    for (const auto& cert : rep.certificates) CHECK(certificate_holds(cert));
}

TEST_CASE("conductor of the cusp in QQ[t]") {
    AdjunctionTower stage;
    stage.base = cusp();
    stage.ambient = qq_t();
    ConductorIdeal cond = conductor(stage, {value_from_string(qq_t(), "t")}, 2);
    REQUIRE(cond.generators.size() == 2);
    CHECK(value_to_string(cond.generators[0]) == "1*t^2");
    CHECK(value_to_string(cond.generators[1]) == "1*t^3");
    CHECK(cond.exponent_n == 1);  // (d-1)·q = 1
    CHECK_FALSE(cond.is_unit_ideal);

    // membership characterization double-check: x in a iff x·t in A
    for (const auto& g : cond.generators) {
        RingValue xt = ring_mul(g, value_from_string(qq_t(), "t"));
        CHECK(ring_membership(xt, cusp()));
    }
    // a·B ⊆ A on generators: multiply by 1, t, t^2, t^3
    for (const auto& g : cond.generators)
        for (unsigned j = 0; j <= 3; ++j) {
            RingValue tj = ring_pow(value_from_string(qq_t(), "t"), j);
            CHECK(ring_membership(ring_mul(g, tj), cusp()));
        }
}

TEST_CASE("conductor of QQ[t^3,t^4,t^5] in QQ[t]") {
    AdjunctionTower stage;
    stage.base = sg345();
    stage.ambient = qq_t();
    ConductorIdeal cond = conductor(stage, {value_from_string(qq_t(), "t")}, 3);
    REQUIRE(cond.generators.size() == 3);
    CHECK(value_to_string(cond.generators[0]) == "1*t^3");
    CHECK(value_to_string(cond.generators[1]) == "1*t^4");
    CHECK(value_to_string(cond.generators[2]) == "1*t^5");
}

TEST_CASE("conductor of a ring in itself is the unit ideal") {
    AdjunctionTower stage;
    stage.base = cusp();
    stage.ambient = qq_t();
    // extension generated by elements already in the ring
    ConductorIdeal cond = conductor(stage, {value_from_string(qq_t(), "t^2")}, 2);
    CHECK(cond.is_unit_ideal);
}

TEST_CASE("conductor radicality spot-checks") {
    // The conductor is an ideal of both rings; radicality inside the base
    // ring holds on these instances (the u-over-B version needs a seminormal
    // base, which the cusp deliberately is not). Sample u in A.
    semnorm::testing::Rng rng(101);
    auto in_conductor = [&](const RingValue& u_amb) {
        if (!ring_membership(u_amb, cusp())) return false;
        return ring_membership(ring_mul(u_amb, value_from_string(qq_t(), "t")), cusp());
    };
    int hits = 0;
    for (int i = 0; i < 300; ++i) {
        RingValue u_sub = semnorm::testing::random_value(cusp(), rng);
        RingValue u = ring_transport(u_sub, qq_t());
        RingValue u2 = ring_mul(u, u);
        if (in_conductor(u2) && !ring_is_zero(u)) {
            ++hits;
            CHECK(in_conductor(u));
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("closure tower: gcd-family base factors directly with an empty tower") {
    SquareMatrix p = schanuel_over(qq_t());
    ClosureOutcome out = closure_tower(qq_t(), certify_rank1(p));
    CHECK(out.tower.empty());
    CHECK(verify_factorization(p, out.fac));
    CHECK(ring_is_one(poly_eval_at_zero(out.fac.f[0])));
}

TEST_CASE("closure tower: the cusp adjoins t") {
    SquareMatrix p = schanuel_over(cusp());
    ClosureOutcome out = closure_tower(cusp(), certify_rank1(p));
    REQUIRE(out.tower.steps.size() == 1);
    CHECK(value_to_string(out.tower.steps[0]) == "1*t");
    // the factorization lives over the tower top
    for (const auto& fi : out.fac.f)
        for (const auto& c : poly_coefficients(fi))
            CHECK(tower_contains(out.tower, 1, c));
}

TEST_CASE("closure tower: round-trip instances over QQ[t^3,t^4,t^5] stay put") {
    RingPtr a = sg345();
    std::vector<std::string> vars{"X"};
    // unimodular pair with coefficients in A and f1(0) = g1(0) = 1
    std::vector<MultiPoly> f = {
        poly_from_string(a, vars, "1 + t^3*X"),
        poly_from_string(a, vars, "t^4*X^2"),
    };
    std::vector<MultiPoly> g = {
        poly_from_string(a, vars, "1 - t^3*X + t^6*X^2"),
        poly_from_string(a, vars, "t^5*X"),
    };
    // force g·f = 1: current dot = (1+t^3X)(1-t^3X+t^6X^2) + t^4X^2·t^5X
    //                          = 1 + t^9X^3 + t^9X^3 = 1 + 2
    // recompute honestly instead: g2 chosen to cancel the cubic term
    MultiPoly dot(a, vars);
    for (size_t i = 0; i < 2; ++i) dot = poly_add(dot, poly_mul(g[i], f[i]));
    MultiPoly one = MultiPoly::constant(a, vars, ring_one(a));
    MultiPoly excess = poly_sub(dot, one);
    // excess is divisible by f2 = t^4X^2 here; correct g2 by the quotient
    if (!excess.is_zero()) {
        auto q = poly_try_exact_div(excess, f[1]);
        REQUIRE(q);
        g[1] = poly_sub(g[1], *q);
    }
    dot = MultiPoly(a, vars);
    for (size_t i = 0; i < 2; ++i) dot = poly_add(dot, poly_mul(g[i], f[i]));
    REQUIRE(poly_eq(dot, one));

    SquareMatrix p(a, vars, 2);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) p.set(i, j, poly_mul(f[i], g[j]));
    FactorizationResult res = factor_rank1_seminormal(a, certify_rank1(p));
    CHECK(res.factored);
    CHECK(res.tower.empty());
    CHECK(verify_factorization(p, res.fac));
}

TEST_CASE("driver: factored over QQ[t]") {
    SquareMatrix p = schanuel_over(qq_t());
    FactorizationResult res = factor_rank1_seminormal(qq_t(), certify_rank1(p));
    CHECK(res.factored);
    CHECK(res.tower.empty());
    CHECK(verify_factorization(p, res.fac));
    Rank1Factorization reference;
    reference.f = {poly_from_string(qq_t(), {"X"}, "1 + t*X"),
                   poly_from_string(qq_t(), {"X"}, "t^2*X^2")};
    reference.g = {poly_from_string(qq_t(), {"X"}, "1 - t*X + t^2*X^2 - t^3*X^3"),
                   poly_from_string(qq_t(), {"X"}, "t^2*X^2")};
    RingValue u = unit_between(reference, res.fac);
    CHECK(value_poly(u).is_constant());
}

TEST_CASE("driver: obstructed over the cusp with tower [t]") {
    SquareMatrix p = schanuel_over(cusp());
    FactorizationResult res = factor_rank1_seminormal(cusp(), certify_rank1(p));
    CHECK_FALSE(res.factored);
    REQUIRE(res.tower.steps.size() == 1);
    CHECK(value_to_string(res.tower.steps[0]) == "1*t");
    // the square and cube of the obstruction lie in the base
    RingValue t = res.tower.steps[0];
    CHECK(ring_membership(ring_mul(t, t), cusp()));
    CHECK(ring_membership(ring_mul(ring_mul(t, t), t), cusp()));
    // rerunning over the tower top (= QQ[t]) factors
    FactorizationResult res2 = factor_rank1_seminormal(qq_t(), certify_rank1(schanuel_over(qq_t())));
    CHECK(res2.factored);
}

TEST_CASE("driver: the constant projection factors trivially") {
    SquareMatrix p = SquareMatrix::standard_projection(cusp(), {"X"}, 3, 1);
    FactorizationResult res = factor_rank1_seminormal(cusp(), certify_rank1(p));
    CHECK(res.factored);
    CHECK(poly_to_string(res.fac.f[0]) == "1");
    CHECK(res.fac.f[1].is_zero());
    CHECK(poly_to_string(res.fac.g[0]) == "1");
}

TEST_CASE("driver rejects P(0) != I_{n,1}") {
    SquareMatrix p(qq_t(), {"X"}, 2);
    p.set(1, 1, MultiPoly::constant(qq_t(), {"X"}, ring_one(qq_t())));
    CHECK_THROWS_AS(factor_rank1_seminormal(qq_t(), certify_rank1(p)), validation_error);
}

TEST_CASE("driver soundness on round-trip instances over seminormal bases") {
    semnorm::testing::Rng rng(103);
    std::vector<RingPtr> bases = {qq(), ring_integers()};
    for (const auto& base : bases) {
        CAPTURE(base->name());
        for (int iter = 0; iter < 20; ++iter) {
            size_t n = 2 + (rng() % 2);
            auto pair = semnorm::testing::random_unimodular_pair(base, {"X"}, rng, n);
            // normalize to P(0) = I_{n,1}: the shear construction keeps
            // f1(0) = g1(0) = 1 and the others 0 at X = 0 only if shears used
            // polynomial multiples of X; enforce by substituting zero
            bool standard = true;
            SquareMatrix p(base, {"X"}, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) p.set(i, j, poly_mul(pair.f[i], pair.g[j]));
            if (!mat_eq(mat_eval_at_zero(p),
                        SquareMatrix::standard_projection(base, {"X"}, n, 1)))
                standard = false;
            if (!standard) continue;
            FactorizationResult res = factor_rank1_seminormal(base, certify_rank1(p));
            CHECK(res.factored);
            CHECK(verify_factorization(p, res.fac));
        }
    }
}
