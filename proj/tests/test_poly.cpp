#include <doctest.h>

#include "semnorm/poly.hpp"
#include "semnorm/polytext.hpp"
#include "support.hpp"

using namespace semnorm;
using semnorm::testing::random_value;

namespace {

RingPtr qq_t() { return ring_univariate(ring_rationals(), "t"); }

MultiPoly qt_poly(const std::string& s) { return poly_from_string(qq_t(), {"X"}, s); }

MultiPoly random_poly(const RingPtr& ring, const std::vector<std::string>& vars,
                      semnorm::testing::Rng& rng, unsigned maxdeg = 3, int nterms = 4) {
    MultiPoly p(ring, vars);
    std::uniform_int_distribution<int> tn(0, nterms);
    std::uniform_int_distribution<unsigned> de(0, maxdeg);
    int k = tn(rng);
    for (int i = 0; i < k; ++i) {
        Exps e(vars.size());
        for (auto& x : e) x = de(rng);
        MultiPoly::TermMap tm;
        RingValue c = random_value(ring, rng, 5);
        if (ring_is_zero(c)) continue;
        tm.emplace(std::move(e), std::move(c));
        p = poly_add(p, MultiPoly::from_terms(ring, vars, std::move(tm)));
    }
    return p;
}

}  // namespace

TEST_CASE("polynomial products expand exactly") {
    MultiPoly a = qt_poly("1 + t*X");
    MultiPoly b = qt_poly("1 - t*X");
    CHECK(poly_to_string(poly_mul(a, b)) == "1 - 1*t^2*X^2");
    MultiPoly c = qt_poly("1 + t^2*X^2");
    CHECK(poly_to_string(poly_mul(poly_mul(a, b), c)) == "1 - 1*t^4*X^4");
    MultiPoly p = qt_poly("3 - 2*t*X + t^5*X^3");
    CHECK(poly_add(p, poly_neg(p)).is_zero());
}

TEST_CASE("arity and ring mismatches are rejected") {
    MultiPoly a = qt_poly("1 + t*X");
    MultiPoly b = poly_from_string(ring_rationals(), {"X"}, "1 + X");
    CHECK_THROWS_AS(poly_add(a, b), validation_error);
}

TEST_CASE("evaluation at zero") {
    CHECK(value_to_string(poly_eval_at_zero(qt_poly("1 + t*X"))) == "1");
    CHECK(ring_is_zero(poly_eval_at_zero(qt_poly("t^2*X^2"))));
    CHECK(value_to_string(poly_eval_at_zero(qt_poly("7"))) == "7");
}

TEST_CASE("evaluation at zero is a ring homomorphism") {
    semnorm::testing::Rng rng(23);
    RingPtr r = ring_product({ring_rationals(), ring_prime_field(5)});
    for (int i = 0; i < 500; ++i) {
        MultiPoly p = random_poly(r, {"X", "Y"}, rng);
        MultiPoly q = random_poly(r, {"X", "Y"}, rng);
        CHECK(ring_value_eq(poly_eval_at_zero(poly_mul(p, q)),
                            ring_mul(poly_eval_at_zero(p), poly_eval_at_zero(q))));
        CHECK(ring_value_eq(poly_eval_at_zero(poly_add(p, q)),
                            ring_add(poly_eval_at_zero(p), poly_eval_at_zero(q))));
    }
}

TEST_CASE("units of polynomial rings") {
    CHECK(poly_try_invert(qt_poly("1")).has_value());
    CHECK(poly_to_string(*poly_try_invert(qt_poly("1"))) == "1");
    CHECK_FALSE(poly_try_invert(qt_poly("1 + t*X")).has_value());
    CHECK_FALSE(poly_try_invert(qt_poly("t")).has_value());

    RingPtr dual = ring_dual_numbers(ring_rationals(), 2);
    MultiPoly p = poly_from_string(dual, {"X"}, "1 + eps*X");
    auto inv = poly_try_invert(p);
    REQUIRE(inv);
    CHECK(poly_to_string(*inv) == "1 - 1*eps*X");

    // order-4 dual numbers: longer geometric series
    RingPtr dual4 = ring_dual_numbers(ring_rationals(), 4);
    MultiPoly p4 = poly_from_string(dual4, {"X"}, "2 + eps*X + eps^2*X^3");
    auto inv4 = poly_try_invert(p4);
    REQUIRE(inv4);
    MultiPoly one = MultiPoly::constant(dual4, {"X"}, ring_one(dual4));
    CHECK(poly_eq(poly_mul(*inv4, p4), one));
}

TEST_CASE("is_unit soundness on random dual-number polynomials") {
    semnorm::testing::Rng rng(29);
    RingPtr dual = ring_dual_numbers(ring_rationals(), 3);
    MultiPoly one = MultiPoly::constant(dual, {"X"}, ring_one(dual));
    int units = 0;
    for (int i = 0; i < 300; ++i) {
        MultiPoly p = random_poly(dual, {"X"}, rng);
        auto inv = poly_try_invert(p);
        if (inv) {
            ++units;
            CHECK(poly_eq(poly_mul(p, *inv), one));
        }
    }
    CHECK(units > 0);
}

TEST_CASE("kronecker substitution") {
    RingPtr r = ring_rationals();
    MultiPoly p = poly_from_string(r, {"X1", "X2"}, "X1 + X2^2");
    CHECK(poly_to_string(kronecker_substitute(p, 3)) == "1*T^3 + 1*T^18");
    MultiPoly c = poly_from_string(r, {"X1", "X2"}, "5");
    CHECK(poly_to_string(kronecker_substitute(c, 4)) == "5");
    MultiPoly xy = poly_from_string(r, {"X1", "X2"}, "X1*X2");
    CHECK(poly_to_string(kronecker_substitute(xy, 2)) == "1*T^6");
}

TEST_CASE("kronecker substitution with safe m preserves the term count") {
    semnorm::testing::Rng rng(31);
    RingPtr r = ring_rationals();
    std::vector<std::string> vars{"X1", "X2", "X3"};
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = random_poly(r, vars, rng, 5, 6);
        unsigned m = kronecker_min_m({p});
        MultiPoly q = kronecker_substitute(p, m);
        CHECK(q.term_count() == p.term_count());
    }
}

TEST_CASE("substitution of a value for a variable") {
    MultiPoly p = qt_poly("1 + t*X + t^3*X^2");
    RingPtr A = qq_t();
    MultiPoly at2 = poly_substitute(p, 0, ring_from_int(A, 2));
    CHECK(poly_to_string(at2) == "1 + 2*t + 4*t^3");
}
