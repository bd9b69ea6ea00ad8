#pragma once

#include <random>

#include "semnorm/poly.hpp"
#include "semnorm/ring.hpp"

namespace semnorm::testing {

using Rng = std::mt19937_64;

inline Int rnd_int(Rng& rng, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return Int(d(rng));
}

inline RingValue random_value(const RingPtr& r, Rng& rng, int size = 8) {
    switch (r->kind) {
        case RingKind::Integers: return ring_from_int(r, rnd_int(rng, -size, size));
        case RingKind::Rationals: {
            Int num = rnd_int(rng, -size, size);
            Int den = rnd_int(rng, 1, size);
            return ring_from_rat(r, rat_of(num, den));
        }
        case RingKind::PrimeField: return ring_from_int(r, rnd_int(rng, 0, 50));
        case RingKind::Product: {
            std::vector<RingValue> parts;
            for (const auto& f : r->factors) parts.push_back(random_value(f, rng, size));
            return ring_tuple(r, std::move(parts));
        }
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers:
        case RingKind::SemigroupSubring: {
            RingValue acc = ring_zero(r);
            std::uniform_int_distribution<int> nterms(0, 3);
            int k = nterms(rng);
            for (int i = 0; i < k; ++i) {
                RingValue term = ring_one(r);
                if (r->kind == RingKind::SemigroupSubring) {
                    // a random semigroup element as a sum of generators
                    std::uniform_int_distribution<int> picks(0, 3);
                    unsigned expo = 0;
                    int np = picks(rng);
                    for (int j = 0; j < np; ++j) {
                        std::uniform_int_distribution<size_t> gi(0, r->semigroup.size() - 1);
                        expo += r->semigroup[gi(rng)];
                    }
                    MultiPoly mono = MultiPoly::variable(r->base, r->vars, 0, expo);
                    term = ring_poly_value(r, mono);
                    term = ring_mul(term, ring_from_rat(r, rat_of(rnd_int(rng, -size, size), 1)));
                } else {
                    std::uniform_int_distribution<unsigned> de(0, r->kind == RingKind::DualNumbers
                                                                      ? r->dual_order - 1
                                                                      : 3);
                    MultiPoly mono(r->base, r->vars);
                    Exps e(r->vars.size(), 0);
                    for (size_t v = 0; v < r->vars.size(); ++v) e[v] = de(rng);
                    MultiPoly::TermMap tm;
                    tm.emplace(e, random_value(r->base, rng, size));
                    term = ring_poly_value(r, MultiPoly::from_terms(r->base, r->vars, std::move(tm)));
                }
                acc = ring_add(acc, term);
            }
            return acc;
        }
        case RingKind::ReducedQuotient: {
            if (r->base->kind == RingKind::Integers)
                return ring_from_int(r, rnd_int(rng, 0, 100));
            const MultiPoly& m = value_poly(r->quot_modulus);
            unsigned d = m.degree_in(0);
            MultiPoly::TermMap tm;
            for (unsigned i = 0; i < d; ++i) {
                RingValue c = random_value(r->base->base, rng, size);
                if (!ring_is_zero(c)) tm.emplace(Exps{i}, c);
            }
            return ring_poly_value(r, MultiPoly::from_terms(r->base->base, r->base->vars, std::move(tm)));
        }
        case RingKind::FractionField: {
            RingValue num = random_value(r->base, rng, size);
            RingValue den = random_value(r->base, rng, size);
            while (ring_is_zero(den)) den = random_value(r->base, rng, size);
            RingValue fn = ring_transport(num, r);
            RingValue fd = ring_transport(den, r);
            return ring_mul(fn, *ring_try_invert(fd));
        }
        case RingKind::Localization: {
            RingValue num = random_value(r->base, rng, size);
            RingValue v = ring_transport(num, r);
            std::uniform_int_distribution<int> dp(0, 2);
            int k = dp(rng);
            RingValue s = ring_transport(r->loc_element, r);
            RingValue inv = *ring_try_invert(s);
            for (int i = 0; i < k; ++i) v = ring_mul(v, inv);
            return v;
        }
    }
    return ring_zero(r);
}

// Random unimodular column/row pair with g·f = 1, built from elementary
// shears starting at (e1, e1^T). Degrees stay moderate for small shear
// counts.
struct UnimodularPair {
    std::vector<MultiPoly> f;
    std::vector<MultiPoly> g;
};

inline UnimodularPair random_unimodular_pair(const RingPtr& ring,
                                             const std::vector<std::string>& vars, Rng& rng,
                                             size_t n, int shears = 3, unsigned maxdeg = 1) {
    UnimodularPair p;
    for (size_t i = 0; i < n; ++i) {
        p.f.push_back(i == 0 ? MultiPoly::constant(ring, vars, ring_one(ring))
                             : MultiPoly(ring, vars));
        p.g.push_back(i == 0 ? MultiPoly::constant(ring, vars, ring_one(ring))
                             : MultiPoly(ring, vars));
    }
    if (n == 1) return p;
    std::uniform_int_distribution<unsigned> de(0, maxdeg);
    for (int s = 0; s < shears; ++s) {
        size_t j = 1 + (rng() % (n - 1));
        // random small polynomial multiplier
        MultiPoly h(ring, vars);
        for (int t = 0; t < 2; ++t) {
            Exps e(vars.size(), 0);
            for (auto& x : e) x = de(rng);
            RingValue c = random_value(ring, rng, 3);
            if (ring_is_zero(c)) continue;
            MultiPoly::TermMap tm;
            tm.emplace(std::move(e), std::move(c));
            h = poly_add(h, MultiPoly::from_terms(ring, vars, std::move(tm)));
        }
        if (rng() % 2) {
            p.f[j] = poly_add(p.f[j], poly_mul(h, p.f[0]));
            p.g[0] = poly_sub(p.g[0], poly_mul(h, p.g[j]));
        } else {
            p.f[0] = poly_add(p.f[0], poly_mul(h, p.f[j]));
            p.g[j] = poly_sub(p.g[j], poly_mul(h, p.g[0]));
        }
    }
    return p;
}

}  // namespace semnorm::testing
