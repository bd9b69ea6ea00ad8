#include "semnorm/ring.hpp"

#include <algorithm>
#include <numeric>

#include "semnorm/poly.hpp"

namespace semnorm {

namespace {

RingPtr make_ring(Ring r) { return std::make_shared<const Ring>(std::move(r)); }

[[noreturn]] void mismatch() { throw validation_error("ring descriptor mismatch between operands"); }

bool payload_eq(const Payload& a, const Payload& b);

// Rings whose values are polynomial payloads.
bool poly_payload_kind(RingKind k) {
    return k == RingKind::Univariate || k == RingKind::Multivariate ||
           k == RingKind::SemigroupSubring || k == RingKind::DualNumbers;
}

bool quotient_over_poly(const Ring& r) {
    return r.kind == RingKind::ReducedQuotient && r.base->kind == RingKind::Univariate;
}

// Coefficient ring and variable list of the payload polynomial.
RingPtr payload_ring(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: return r->base;
        case RingKind::SemigroupSubring: return r->base;
        case RingKind::ReducedQuotient: return r->base->base;
        case RingKind::FractionField: return r->base->base;
        default: throw internal_error("payload_ring: not a polynomial payload ring");
    }
}

const std::vector<std::string>& payload_vars(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers:
        case RingKind::SemigroupSubring: return r->vars;
        case RingKind::ReducedQuotient:
        case RingKind::FractionField: return r->base->vars;
        default: throw internal_error("payload_vars: not a polynomial payload ring");
    }
}

PolyPtr share(MultiPoly p) { return std::make_shared<const MultiPoly>(std::move(p)); }

}  // namespace

// ---- descriptor equality ----

bool Ring::equals(const Ring& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::PrimeField: return char_p == o.char_p;
        case RingKind::Univariate:
        case RingKind::Multivariate: return vars == o.vars && base->equals(*o.base);
        case RingKind::Product: {
            if (factors.size() != o.factors.size()) return false;
            for (size_t i = 0; i < factors.size(); ++i)
                if (!factors[i]->equals(*o.factors[i])) return false;
            return true;
        }
        case RingKind::SemigroupSubring:
            return vars == o.vars && semigroup == o.semigroup && base->equals(*o.base);
        case RingKind::DualNumbers:
            return vars == o.vars && dual_order == o.dual_order && base->equals(*o.base);
        case RingKind::Localization:
            return base->equals(*o.base) && payload_eq(loc_element.payload, o.loc_element.payload);
        case RingKind::ReducedQuotient:
            return base->equals(*o.base) && payload_eq(quot_modulus.payload, o.quot_modulus.payload);
        case RingKind::FractionField: return base->equals(*o.base);
    }
    return false;
}

bool ring_eq(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->equals(*b);
}

std::vector<std::string> Ring::flatten_vars() const {
    switch (kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: {
            auto out = base->flatten_vars();
            out.insert(out.end(), vars.begin(), vars.end());
            return out;
        }
        case RingKind::SemigroupSubring: return {vars[0]};
        case RingKind::ReducedQuotient:
            if (base->kind == RingKind::Univariate) return base->flatten_vars();
            return {};
        case RingKind::FractionField: return base->flatten_vars();
        default: return {};
    }
}

RingPtr ring_scalar(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: return ring_scalar(r->base);
        case RingKind::SemigroupSubring: return r->base;
        case RingKind::ReducedQuotient:
            if (r->base->kind == RingKind::Univariate) return r->base->base;
            return r;
        default: return r;
    }
}

std::string Ring::name() const {
    switch (kind) {
        case RingKind::Integers: return "ZZ";
        case RingKind::Rationals: return "QQ";
        case RingKind::PrimeField: return "GF(" + char_p.get_str() + ")";
        case RingKind::Univariate: return base->name() + "[" + vars[0] + "]";
        case RingKind::Multivariate: {
            std::string s = base->name() + "[";
            for (size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
            return s + "]";
        }
        case RingKind::Product: {
            std::string s;
            for (size_t i = 0; i < factors.size(); ++i) s += (i ? " x " : "") + factors[i]->name();
            return s;
        }
        case RingKind::SemigroupSubring: {
            std::string s = base->name() + "[";
            for (size_t i = 0; i < semigroup.size(); ++i)
                s += (i ? "," : "") + vars[0] + "^" + std::to_string(semigroup[i]);
            return s + "]";
        }
        case RingKind::DualNumbers:
            return base->name() + "[" + vars[0] + "]/(" + vars[0] + "^" + std::to_string(dual_order) + ")";
        case RingKind::Localization:
            return base->name() + "[1/(" + value_to_string(loc_element) + ")]";
        case RingKind::ReducedQuotient:
            return base->name() + "/(" + value_to_string(quot_modulus) + ")";
        case RingKind::FractionField: return "Frac(" + base->name() + ")";
    }
    return "?";
}

// ---- numerical semigroups ----

bool semigroup_contains(const std::vector<unsigned>& gens, unsigned n) {
    if (n == 0) return true;
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    for (unsigned v = 1; v <= n; ++v)
        for (unsigned g : gens)
            if (g <= v && g > 0 && reach[v - g]) {
                reach[v] = 1;
                break;
            }
    return reach[n] != 0;
}

unsigned semigroup_conductor_bound(const std::vector<unsigned>& gens) {
    unsigned gmin = 0, gmax = 0;
    for (unsigned g : gens) {
        if (g == 0) continue;
        gmin = (gmin == 0) ? g : std::min(gmin, g);
        gmax = std::max(gmax, g);
    }
    if (gmin == 1) return 0;
    unsigned bound = gmin * gmax;  // Frobenius number < gmin*gmax
    unsigned last_gap = 0;
    for (unsigned v = 1; v <= bound; ++v)
        if (!semigroup_contains(gens, v)) last_gap = v;
    return last_gap + 1;
}

// ---- constructors ----

RingPtr ring_integers() {
    static RingPtr r = make_ring(Ring{.kind = RingKind::Integers});
    return r;
}

RingPtr ring_rationals() {
    static RingPtr r = make_ring(Ring{.kind = RingKind::Rationals});
    return r;
}

RingPtr ring_prime_field(const Int& p) {
    if (p < 2 || !int_is_prime(p)) throw validation_error("prime field characteristic must be prime");
    Ring r{.kind = RingKind::PrimeField};
    r.char_p = p;
    return make_ring(std::move(r));
}

namespace {
void check_fresh_vars(const RingPtr& base, const std::vector<std::string>& vars) {
    auto below = base->flatten_vars();
    for (const auto& v : vars) {
        if (v.empty()) throw validation_error("empty variable name");
        if (std::count(vars.begin(), vars.end(), v) > 1)
            throw validation_error("duplicate variable name: " + v);
        if (std::find(below.begin(), below.end(), v) != below.end())
            throw validation_error("variable name shadows a base-ring variable: " + v);
    }
}
}  // namespace

RingPtr ring_univariate(RingPtr base, const std::string& var) {
    check_fresh_vars(base, {var});
    Ring r{.kind = RingKind::Univariate};
    r.base = std::move(base);
    r.vars = {var};
    return make_ring(std::move(r));
}

RingPtr ring_multivariate(RingPtr base, std::vector<std::string> vars) {
    if (vars.empty()) throw validation_error("multivariate ring needs at least one variable");
    check_fresh_vars(base, vars);
    Ring r{.kind = RingKind::Multivariate};
    r.base = std::move(base);
    r.vars = std::move(vars);
    return make_ring(std::move(r));
}

RingPtr ring_trivial() {
    Ring r{.kind = RingKind::ReducedQuotient};
    r.base = ring_integers();
    r.quot_modulus = RingValue(ring_integers(), Int(1));
    static RingPtr t = make_ring(std::move(r));
    return t;
}

RingPtr ring_product(std::vector<RingPtr> factors) {
    std::vector<RingPtr> kept;
    for (auto& f : factors)
        if (!ring_is_trivial(f)) kept.push_back(f);
    if (kept.empty()) return ring_trivial();
    if (kept.size() == 1) return kept[0];
    Ring r{.kind = RingKind::Product};
    r.factors = std::move(kept);
    return make_ring(std::move(r));
}

RingPtr ring_semigroup_subring(RingPtr field, std::vector<unsigned> gens, const std::string& var) {
    if (!ring_is_field(field)) throw validation_error("semigroup subring needs a field of coefficients");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (!gens.empty() && gens.front() == 0) gens.erase(gens.begin());
    if (gens.empty()) throw validation_error("semigroup subring needs positive generators");
    unsigned g = 0;
    for (unsigned x : gens) g = std::gcd(g, x);
    if (g != 1) throw validation_error("semigroup generators must have gcd 1");
    Ring r{.kind = RingKind::SemigroupSubring};
    r.base = std::move(field);
    r.semigroup = std::move(gens);
    r.vars = {var};
    return make_ring(std::move(r));
}

RingPtr ring_dual_numbers(RingPtr base, unsigned order, const std::string& var) {
    if (order < 2) throw validation_error("dual numbers need nilpotency order >= 2");
    check_fresh_vars(base, {var});
    Ring r{.kind = RingKind::DualNumbers};
    r.base = std::move(base);
    r.dual_order = order;
    r.vars = {var};
    return make_ring(std::move(r));
}

RingPtr ring_localization(RingPtr base, const RingValue& inverted) {
    if (!ring_eq(inverted.ring, base)) throw validation_error("localization element not in base ring");
    if (ring_is_zero(inverted)) return ring_trivial();
    if (ring_try_invert(inverted)) return base;
    switch (base->kind) {
        case RingKind::Product: {
            const auto& parts = value_tuple(inverted);
            std::vector<RingPtr> out;
            for (size_t i = 0; i < parts.size(); ++i) {
                if (ring_is_zero(parts[i])) continue;  // that component dies
                out.push_back(ring_localization(base->factors[i], parts[i]));
            }
            return ring_product(std::move(out));
        }
        case RingKind::ReducedQuotient: {
            // squarefree modulus: inverting a keeps only the part of the
            // modulus coprime to a
            if (base->base->kind == RingKind::Integers) {
                Int n = value_int(base->quot_modulus);
                Int g = int_gcd(value_int(inverted), n);
                return ring_reduced_quotient(ring_integers(), RingValue(ring_integers(), int_exact_div(n, g)));
            }
            if (quotient_over_poly(*base)) {
                const MultiPoly& m = value_poly(base->quot_modulus);
                const MultiPoly& a = value_poly(inverted);
                MultiPoly g = field_poly_gcd(a, m);
                MultiPoly h = field_poly_divmod(m, g).quot;
                return ring_reduced_quotient(base->base, ring_poly_value(base->base, h));
            }
            throw validation_error("localization unsupported for this quotient base");
        }
        case RingKind::Localization: {
            RingValue combined = ring_mul(base->loc_element, value_loc(inverted).num);
            return ring_localization(base->base, combined);
        }
        case RingKind::Integers:
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring: {
            Ring r{.kind = RingKind::Localization};
            r.base = base;
            r.loc_element = inverted;
            return make_ring(std::move(r));
        }
        default: throw validation_error("localization unsupported for base " + base->name());
    }
}

RingPtr ring_reduced_quotient(RingPtr base, const RingValue& modulus) {
    if (!ring_eq(modulus.ring, base)) throw validation_error("quotient modulus not in base ring");
    if (ring_is_zero(modulus)) return base;
    if (ring_try_invert(modulus)) return ring_trivial();
    switch (base->kind) {
        case RingKind::Integers: {
            Int rad = int_radical(abs(value_int(modulus)));
            Ring r{.kind = RingKind::ReducedQuotient};
            r.base = base;
            r.quot_modulus = RingValue(base, rad);
            return make_ring(std::move(r));
        }
        case RingKind::Univariate: {
            if (!ring_is_field(base->base))
                throw validation_error("reduced quotient needs a field of coefficients");
            MultiPoly rad = field_poly_squarefree_part(value_poly(modulus));
            Ring r{.kind = RingKind::ReducedQuotient};
            r.base = base;
            r.quot_modulus = ring_poly_value(base, rad);
            return make_ring(std::move(r));
        }
        case RingKind::Product: {
            const auto& parts = value_tuple(modulus);
            std::vector<RingPtr> out;
            for (size_t i = 0; i < parts.size(); ++i)
                out.push_back(ring_reduced_quotient(base->factors[i], parts[i]));
            return ring_product(std::move(out));
        }
        case RingKind::ReducedQuotient: {
            if (base->base->kind == RingKind::Integers) {
                Int g = int_gcd(value_int(modulus), value_int(base->quot_modulus));
                return ring_reduced_quotient(ring_integers(), RingValue(ring_integers(), g));
            }
            if (quotient_over_poly(*base)) {
                MultiPoly g = field_poly_gcd(value_poly(modulus), value_poly(base->quot_modulus));
                return ring_reduced_quotient(base->base, ring_poly_value(base->base, g));
            }
            throw validation_error("reduced quotient unsupported for this base");
        }
        default:
            throw validation_error("no radical-generator algorithm for base " + base->name());
    }
}

RingPtr ring_fraction_field(RingPtr base) {
    switch (base->kind) {
        case RingKind::Integers: return ring_rationals();
        case RingKind::Rationals:
        case RingKind::PrimeField:
        case RingKind::FractionField: return base;
        case RingKind::SemigroupSubring:
            return ring_fraction_field(ring_univariate(base->base, base->vars[0]));
        case RingKind::Univariate: {
            if (!ring_is_field(base->base))
                throw validation_error("fraction field supported over field[t] only");
            Ring r{.kind = RingKind::FractionField};
            r.base = base;
            return make_ring(std::move(r));
        }
        default: throw validation_error("fraction field unsupported for base " + base->name());
    }
}

// ---- predicates ----

bool ring_is_trivial(const RingPtr& r) {
    return r->kind == RingKind::ReducedQuotient && r->base->kind == RingKind::Integers &&
           value_int(r->quot_modulus) == 1;
}

bool ring_is_reduced(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::DualNumbers: return false;
        case RingKind::Univariate:
        case RingKind::Multivariate: return ring_is_reduced(r->base);
        case RingKind::Product:
            return std::all_of(r->factors.begin(), r->factors.end(),
                               [](const RingPtr& f) { return ring_is_reduced(f); });
        case RingKind::Localization: return ring_is_reduced(r->base);
        default: return true;
    }
}

bool ring_is_field(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Rationals:
        case RingKind::PrimeField:
        case RingKind::FractionField: return true;
        case RingKind::ReducedQuotient:
            if (r->base->kind == RingKind::Integers) {
                const Int& n = value_int(r->quot_modulus);
                return n > 1 && int_is_prime(n);
            }
            return false;
        default: return false;
    }
}

bool ring_is_domain(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::Rationals:
        case RingKind::PrimeField:
        case RingKind::FractionField:
        case RingKind::SemigroupSubring: return true;
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::Localization: return ring_is_domain(r->base);
        case RingKind::ReducedQuotient: return ring_is_field(r);
        default: return false;
    }
}

bool ring_is_zdr(const RingPtr& r) {
    if (ring_is_field(r) || ring_is_trivial(r)) return true;
    switch (r->kind) {
        case RingKind::ReducedQuotient: return true;  // squarefree modulus by construction
        case RingKind::Product:
            return std::all_of(r->factors.begin(), r->factors.end(),
                               [](const RingPtr& f) { return ring_is_zdr(f); });
        default: return false;
    }
}

bool ring_is_pp(const RingPtr& r) {
    if (ring_is_domain(r) || ring_is_zdr(r)) return true;
    switch (r->kind) {
        case RingKind::Product:
            return std::all_of(r->factors.begin(), r->factors.end(),
                               [](const RingPtr& f) { return ring_is_pp(f); });
        case RingKind::Univariate:
        case RingKind::Multivariate: return ring_is_pp(r->base);
        default: return false;
    }
}

bool ring_is_gcd_family(const RingPtr& r) {
    if (ring_is_field(r) || ring_is_zdr(r)) return true;
    switch (r->kind) {
        case RingKind::Integers: return true;
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::Localization: return ring_is_gcd_family(r->base);
        case RingKind::Product:
            return std::all_of(r->factors.begin(), r->factors.end(),
                               [](const RingPtr& f) { return ring_is_gcd_family(f); });
        default: return false;
    }
}

// ---- payload access ----

const Int& value_int(const RingValue& v) {
    if (auto* p = std::get_if<Int>(&v.payload)) return *p;
    throw internal_error("value is not integer-backed");
}
const Rat& value_rat(const RingValue& v) {
    if (auto* p = std::get_if<Rat>(&v.payload)) return *p;
    throw internal_error("value is not rational-backed");
}
const MultiPoly& value_poly(const RingValue& v) {
    if (auto* p = std::get_if<PolyPtr>(&v.payload)) return **p;
    throw internal_error("value is not polynomial-backed");
}
const std::vector<RingValue>& value_tuple(const RingValue& v) {
    if (auto* p = std::get_if<std::shared_ptr<const TuplePayload>>(&v.payload)) return (*p)->parts;
    throw internal_error("value is not tuple-backed");
}
const FracPayload& value_frac(const RingValue& v) {
    if (auto* p = std::get_if<std::shared_ptr<const FracPayload>>(&v.payload)) return **p;
    throw internal_error("value is not fraction-backed");
}
const LocPayload& value_loc(const RingValue& v) {
    if (auto* p = std::get_if<std::shared_ptr<const LocPayload>>(&v.payload)) return **p;
    throw internal_error("value is not localization-backed");
}

// ---- canonical construction ----

RingValue ring_poly_value(const RingPtr& r, const MultiPoly& payload) {
    if (!ring_eq(payload.coeff_ring(), payload_ring(r)) || payload.vars() != payload_vars(r))
        throw validation_error("payload shape does not match ring " + r->name());
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate: return RingValue(r, share(payload));
        case RingKind::SemigroupSubring: {
            for (const auto& [e, c] : payload.terms())
                if (!semigroup_contains(r->semigroup, e[0]))
                    throw validation_error("monomial exponent outside the numerical semigroup");
            return RingValue(r, share(payload));
        }
        case RingKind::DualNumbers: {
            MultiPoly::TermMap kept;
            for (const auto& [e, c] : payload.terms())
                if (e[0] < r->dual_order) kept.emplace(e, c);
            return RingValue(r, share(MultiPoly::from_terms(payload.coeff_ring(), payload.vars(),
                                                            std::move(kept))));
        }
        case RingKind::ReducedQuotient: {
            const MultiPoly& m = value_poly(r->quot_modulus);
            MultiPoly red = field_poly_divmod(payload, m).rem;
            return RingValue(r, share(std::move(red)));
        }
        default: throw internal_error("ring_poly_value: unsupported ring kind");
    }
}

namespace {

RingValue make_frac(const RingPtr& r, MultiPoly num, MultiPoly den) {
    if (den.is_zero()) throw validation_error("zero denominator");
    MultiPoly g = field_poly_gcd(num, den);
    if (g.degree_in(0) > 0) {
        num = *poly_try_exact_div(num, g);
        den = *poly_try_exact_div(den, g);
    }
    RingValue lead = den.terms().rbegin()->second;
    RingValue inv = *ring_try_invert(lead);
    num = poly_scalar_mul(inv, num);
    den = poly_scalar_mul(inv, den);
    auto fp = std::make_shared<const FracPayload>(FracPayload{share(std::move(num)), share(std::move(den))});
    return RingValue(r, fp);
}

RingValue make_loc(const RingPtr& r, RingValue num, unsigned den_pow) {
    if (ring_is_zero(num)) den_pow = 0;
    while (den_pow > 0) {
        auto q = ring_try_exact_div(num, r->loc_element);
        if (!q) break;
        num = *q;
        --den_pow;
    }
    auto lp = std::make_shared<const LocPayload>(LocPayload{std::move(num), den_pow});
    return RingValue(r, lp);
}

}  // namespace

RingValue ring_zero(const RingPtr& r) { return ring_from_int(r, 0); }
RingValue ring_one(const RingPtr& r) { return ring_from_int(r, 1); }

RingValue ring_from_int(const RingPtr& r, const Int& n) {
    switch (r->kind) {
        case RingKind::Integers: return RingValue(r, n);
        case RingKind::Rationals: return RingValue(r, Rat(n));
        case RingKind::PrimeField: return RingValue(r, int_mod(n, r->char_p));
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring:
        case RingKind::DualNumbers: {
            MultiPoly c = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                              ring_from_int(payload_ring(r), n));
            return ring_poly_value(r, c);
        }
        case RingKind::Product: {
            std::vector<RingValue> parts;
            parts.reserve(r->factors.size());
            for (const auto& f : r->factors) parts.push_back(ring_from_int(f, n));
            return RingValue(r, std::make_shared<const TuplePayload>(TuplePayload{std::move(parts)}));
        }
        case RingKind::Localization: return make_loc(r, ring_from_int(r->base, n), 0);
        case RingKind::ReducedQuotient: {
            if (r->base->kind == RingKind::Integers)
                return RingValue(r, int_mod(n, value_int(r->quot_modulus)));
            MultiPoly c = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                              ring_from_int(payload_ring(r), n));
            return ring_poly_value(r, c);
        }
        case RingKind::FractionField: {
            MultiPoly num = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                                ring_from_int(payload_ring(r), n));
            MultiPoly den = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                                ring_one(payload_ring(r)));
            return make_frac(r, std::move(num), std::move(den));
        }
    }
    throw internal_error("ring_from_int: unhandled kind");
}

RingValue ring_from_rat(const RingPtr& r, const Rat& q) {
    if (q.get_den() == 1) return ring_from_int(r, q.get_num());
    switch (r->kind) {
        case RingKind::Rationals: return RingValue(r, q);
        case RingKind::PrimeField:
        case RingKind::ReducedQuotient: {
            RingValue num = ring_from_int(r, q.get_num());
            RingValue den = ring_from_int(r, q.get_den());
            auto inv = ring_try_invert(den);
            if (!inv) throw validation_error("denominator not invertible in " + r->name());
            return ring_mul(num, *inv);
        }
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring:
        case RingKind::DualNumbers: {
            MultiPoly c = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                              ring_from_rat(payload_ring(r), q));
            return ring_poly_value(r, c);
        }
        case RingKind::Product: {
            std::vector<RingValue> parts;
            for (const auto& f : r->factors) parts.push_back(ring_from_rat(f, q));
            return RingValue(r, std::make_shared<const TuplePayload>(TuplePayload{std::move(parts)}));
        }
        case RingKind::FractionField: {
            MultiPoly num = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                                ring_from_rat(payload_ring(r), q));
            MultiPoly den = MultiPoly::constant(payload_ring(r), payload_vars(r),
                                                ring_one(payload_ring(r)));
            return make_frac(r, std::move(num), std::move(den));
        }
        default: throw validation_error("no rational scalars in " + r->name());
    }
}

RingValue ring_tuple(const RingPtr& product, std::vector<RingValue> parts) {
    if (product->kind != RingKind::Product) throw validation_error("ring_tuple needs a product ring");
    if (parts.size() != product->factors.size()) throw validation_error("tuple arity mismatch");
    for (size_t i = 0; i < parts.size(); ++i)
        if (!ring_eq(parts[i].ring, product->factors[i]))
            throw validation_error("tuple component ring mismatch");
    return RingValue(product, std::make_shared<const TuplePayload>(TuplePayload{std::move(parts)}));
}

// ---- equality / zero tests ----

namespace {
bool payload_eq(const Payload& a, const Payload& b) {
    if (a.index() != b.index()) return false;
    if (auto* x = std::get_if<Int>(&a)) return *x == std::get<Int>(b);
    if (auto* x = std::get_if<Rat>(&a)) return *x == std::get<Rat>(b);
    if (auto* x = std::get_if<PolyPtr>(&a)) return poly_eq(**x, *std::get<PolyPtr>(b));
    if (auto* x = std::get_if<std::shared_ptr<const TuplePayload>>(&a)) {
        const auto& ya = (*x)->parts;
        const auto& yb = std::get<std::shared_ptr<const TuplePayload>>(b)->parts;
        if (ya.size() != yb.size()) return false;
        for (size_t i = 0; i < ya.size(); ++i)
            if (!ring_value_eq(ya[i], yb[i])) return false;
        return true;
    }
    if (auto* x = std::get_if<std::shared_ptr<const FracPayload>>(&a)) {
        const auto& yb = std::get<std::shared_ptr<const FracPayload>>(b);
        return poly_eq(*(*x)->num, *yb->num) && poly_eq(*(*x)->den, *yb->den);
    }
    if (auto* x = std::get_if<std::shared_ptr<const LocPayload>>(&a)) {
        const auto& yb = std::get<std::shared_ptr<const LocPayload>>(b);
        return (*x)->den_pow == yb->den_pow && ring_value_eq((*x)->num, yb->num);
    }
    return std::holds_alternative<std::monostate>(a);
}
}  // namespace

bool ring_value_eq(const RingValue& a, const RingValue& b) {
    if (!ring_eq(a.ring, b.ring)) return false;
    return payload_eq(a.payload, b.payload);
}

bool ring_is_zero(const RingValue& a) { return ring_value_eq(a, ring_zero(a.ring)); }
bool ring_is_one(const RingValue& a) { return ring_value_eq(a, ring_one(a.ring)); }

// ---- arithmetic ----

namespace {

template <typename FInt, typename FRat, typename FPoly>
RingValue binop(const RingValue& a, const RingValue& b, FInt fint, FRat frat, FPoly fpoly) {
    if (!ring_eq(a.ring, b.ring)) mismatch();
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::Integers: return RingValue(r, fint(value_int(a), value_int(b)));
        case RingKind::Rationals: return RingValue(r, frat(value_rat(a), value_rat(b)));
        case RingKind::PrimeField:
            return RingValue(r, int_mod(fint(value_int(a), value_int(b)), r->char_p));
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring:
        case RingKind::DualNumbers: return ring_poly_value(r, fpoly(value_poly(a), value_poly(b)));
        case RingKind::Product: {
            const auto& xa = value_tuple(a);
            const auto& xb = value_tuple(b);
            std::vector<RingValue> parts;
            parts.reserve(xa.size());
            for (size_t i = 0; i < xa.size(); ++i) parts.push_back(binop(xa[i], xb[i], fint, frat, fpoly));
            return RingValue(r, std::make_shared<const TuplePayload>(TuplePayload{std::move(parts)}));
        }
        case RingKind::ReducedQuotient:
            if (r->base->kind == RingKind::Integers)
                return RingValue(r, int_mod(fint(value_int(a), value_int(b)), value_int(r->quot_modulus)));
            return ring_poly_value(r, fpoly(value_poly(a), value_poly(b)));
        default: throw internal_error("binop: kind handled elsewhere");
    }
}

}  // namespace

RingValue ring_add(const RingValue& a, const RingValue& b) {
    const RingPtr& r = a.ring;
    if (r->kind == RingKind::FractionField) {
        if (!ring_eq(a.ring, b.ring)) mismatch();
        const auto& fa = value_frac(a);
        const auto& fb = value_frac(b);
        MultiPoly num = poly_add(poly_mul(*fa.num, *fb.den), poly_mul(*fb.num, *fa.den));
        MultiPoly den = poly_mul(*fa.den, *fb.den);
        return make_frac(r, std::move(num), std::move(den));
    }
    if (r->kind == RingKind::Localization) {
        if (!ring_eq(a.ring, b.ring)) mismatch();
        const auto& la = value_loc(a);
        const auto& lb = value_loc(b);
        unsigned k = std::max(la.den_pow, lb.den_pow);
        RingValue na = ring_mul(la.num, ring_pow(r->loc_element, k - la.den_pow));
        RingValue nb = ring_mul(lb.num, ring_pow(r->loc_element, k - lb.den_pow));
        return make_loc(r, ring_add(na, nb), k);
    }
    return binop(
        a, b, [](const Int& x, const Int& y) { return Int(x + y); },
        [](const Rat& x, const Rat& y) { return Rat(x + y); },
        [](const MultiPoly& x, const MultiPoly& y) { return poly_add(x, y); });
}

RingValue ring_sub(const RingValue& a, const RingValue& b) { return ring_add(a, ring_neg(b)); }

RingValue ring_neg(const RingValue& a) {
    const RingPtr& r = a.ring;
    switch (r->kind) {
        case RingKind::FractionField: {
            const auto& f = value_frac(a);
            return RingValue(r, std::make_shared<const FracPayload>(
                                    FracPayload{share(poly_neg(*f.num)), f.den}));
        }
        case RingKind::Localization: {
            const auto& l = value_loc(a);
            return RingValue(r, std::make_shared<const LocPayload>(
                                    LocPayload{ring_neg(l.num), l.den_pow}));
        }
        default:
            return binop(
                a, a, [](const Int& x, const Int&) { return Int(-x); },
                [](const Rat& x, const Rat&) { return Rat(-x); },
                [](const MultiPoly& x, const MultiPoly&) { return poly_neg(x); });
    }
}

RingValue ring_mul(const RingValue& a, const RingValue& b) {
    const RingPtr& r = a.ring;
    if (r->kind == RingKind::FractionField) {
        if (!ring_eq(a.ring, b.ring)) mismatch();
        const auto& fa = value_frac(a);
        const auto& fb = value_frac(b);
        return make_frac(r, poly_mul(*fa.num, *fb.num), poly_mul(*fa.den, *fb.den));
    }
    if (r->kind == RingKind::Localization) {
        if (!ring_eq(a.ring, b.ring)) mismatch();
        const auto& la = value_loc(a);
        const auto& lb = value_loc(b);
        return make_loc(r, ring_mul(la.num, lb.num), la.den_pow + lb.den_pow);
    }
    return binop(
        a, b, [](const Int& x, const Int& y) { return Int(x * y); },
        [](const Rat& x, const Rat& y) { return Rat(x * y); },
        [](const MultiPoly& x, const MultiPoly& y) { return poly_mul(x, y); });
}

RingValue ring_pow(const RingValue& a, unsigned e) {
    RingValue r = ring_one(a.ring);
    RingValue base = a;
    while (e > 0) {
        if (e & 1u) r = ring_mul(r, base);
        e >>= 1u;
        if (e > 0) base = ring_mul(base, base);
    }
    return r;
}

// ---- inverses, exact division ----

std::optional<RingValue> ring_try_invert(const RingValue& a) {
    const RingPtr& r = a.ring;
    if (ring_is_trivial(r)) return a;
    switch (r->kind) {
        case RingKind::Integers: {
            const Int& n = value_int(a);
            if (n == 1 || n == -1) return a;
            return std::nullopt;
        }
        case RingKind::Rationals: {
            const Rat& q = value_rat(a);
            if (q == 0) return std::nullopt;
            return RingValue(r, Rat(1 / q));
        }
        case RingKind::PrimeField: {
            auto inv = int_mod_inverse(value_int(a), r->char_p);
            if (!inv) return std::nullopt;
            return RingValue(r, *inv);
        }
        case RingKind::ReducedQuotient: {
            if (r->base->kind == RingKind::Integers) {
                auto inv = int_mod_inverse(value_int(a), value_int(r->quot_modulus));
                if (!inv) return std::nullopt;
                return RingValue(r, *inv);
            }
            const MultiPoly& m = value_poly(r->quot_modulus);
            auto eg = field_poly_ext_gcd(value_poly(a), m);
            if (eg.g.degree_in(0) != 0 || eg.g.is_zero()) return std::nullopt;
            return ring_poly_value(r, eg.u);
        }
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring:
        case RingKind::DualNumbers: {
            auto inv = poly_try_invert(value_poly(a));
            if (!inv) return std::nullopt;
            return ring_poly_value(r, *inv);
        }
        case RingKind::Product: {
            const auto& parts = value_tuple(a);
            std::vector<RingValue> out;
            out.reserve(parts.size());
            for (const auto& p : parts) {
                auto inv = ring_try_invert(p);
                if (!inv) return std::nullopt;
                out.push_back(*inv);
            }
            return ring_tuple(r, std::move(out));
        }
        case RingKind::FractionField: {
            const auto& f = value_frac(a);
            if (f.num->is_zero()) return std::nullopt;
            return make_frac(r, *f.den, *f.num);
        }
        case RingKind::Localization: {
            const auto& l = value_loc(a);
            // a unit iff the numerator divides a power of the inverted element
            auto binv = ring_try_invert(l.num);
            if (binv) return make_loc(r, ring_mul(*binv, ring_pow(r->loc_element, l.den_pow)), 0);
            unsigned cap = 64;
            RingValue spow = ring_one(r->base);
            for (unsigned m = 1; m <= cap; ++m) {
                spow = ring_mul(spow, r->loc_element);
                auto q = ring_try_exact_div(spow, l.num);
                if (q) {
                    // 1/a = q * s^(den_pow) / s^m
                    return make_loc(r, ring_mul(*q, ring_pow(r->loc_element, l.den_pow)), m);
                }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<RingValue> ring_try_exact_div(const RingValue& a, const RingValue& b) {
    const RingPtr& r = a.ring;
    if (!ring_eq(a.ring, b.ring)) mismatch();
    if (ring_is_trivial(r)) return a;
    if (auto inv = ring_try_invert(b)) return ring_mul(a, *inv);
    if (ring_is_zero(b)) return std::nullopt;
    switch (r->kind) {
        case RingKind::Integers: {
            if (!int_divisible(value_int(a), value_int(b))) return std::nullopt;
            return RingValue(r, int_exact_div(value_int(a), value_int(b)));
        }
        case RingKind::Univariate:
        case RingKind::Multivariate: {
            auto q = poly_try_exact_div(value_poly(a), value_poly(b));
            if (!q) return std::nullopt;
            return ring_poly_value(r, *q);
        }
        case RingKind::SemigroupSubring: {
            auto q = poly_try_exact_div(value_poly(a), value_poly(b));
            if (!q) return std::nullopt;
            for (const auto& [e, c] : q->terms())
                if (!semigroup_contains(r->semigroup, e[0])) return std::nullopt;
            return ring_poly_value(r, *q);
        }
        case RingKind::Product: {
            const auto& xa = value_tuple(a);
            const auto& xb = value_tuple(b);
            std::vector<RingValue> out;
            for (size_t i = 0; i < xa.size(); ++i) {
                auto q = ring_try_exact_div(xa[i], xb[i]);
                if (!q) return std::nullopt;
                out.push_back(*q);
            }
            return ring_tuple(r, std::move(out));
        }
        case RingKind::ReducedQuotient: {
            // canonical choice: a·b° where b° is the quasi-inverse
            auto bq = ring_try_quasi_inverse(b);
            if (!bq) return std::nullopt;
            RingValue cand = ring_mul(a, *bq);
            if (ring_value_eq(ring_mul(cand, b), a)) return cand;
            return std::nullopt;
        }
        case RingKind::Localization: {
            const auto& la = value_loc(a);
            const auto& lb = value_loc(b);
            // (na/s^j)/(nb/s^k) = na*s^k / (nb*s^j)
            RingValue num = ring_mul(la.num, ring_pow(r->loc_element, lb.den_pow));
            auto q = ring_try_exact_div(num, lb.num);
            if (q) return make_loc(r, *q, la.den_pow);
            // allow extra powers of s in the denominator
            for (unsigned extra = 1; extra <= 64; ++extra) {
                num = ring_mul(num, r->loc_element);
                q = ring_try_exact_div(num, lb.num);
                if (q) return make_loc(r, *q, la.den_pow + extra);
            }
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

// ---- quasi-inverse (zero-dimensional reduced family) ----

std::optional<RingValue> ring_try_quasi_inverse(const RingValue& a) {
    const RingPtr& r = a.ring;
    if (ring_is_trivial(r)) return a;
    if (ring_is_field(r)) {
        if (ring_is_zero(a)) return a;
        return ring_try_invert(a);
    }
    switch (r->kind) {
        case RingKind::ReducedQuotient: {
            if (r->base->kind == RingKind::Integers) {
                const Int& n = value_int(r->quot_modulus);
                Int g = int_gcd(value_int(a), n);
                Int h = int_exact_div(n, g);
                if (h == 1) return ring_zero(r);
                Int inv = *int_mod_inverse(int_mod(value_int(a), h), h);
                return RingValue(r, int_crt(Int(0), g, inv, h));
            }
            if (quotient_over_poly(*r)) {
                const MultiPoly& m = value_poly(r->quot_modulus);
                MultiPoly g = field_poly_gcd(value_poly(a), m);
                MultiPoly h = field_poly_divmod(m, g).quot;
                if (h.degree_in(0) == 0) return ring_zero(r);
                auto eg = field_poly_ext_gcd(value_poly(a), h);
                if (eg.g.degree_in(0) != 0) return std::nullopt;
                // u ≡ a^{-1} mod h; a° = u·(1 - g·g') where… CRT form: a° ≡ 0 mod g, ≡ a^{-1} mod h
                auto cg = field_poly_ext_gcd(g, h);  // cg.u·g + cg.v·h = 1
                MultiPoly e_h = poly_mul(cg.u, g);   // ≡ 0 mod g, ≡ 1 mod h
                MultiPoly astar = field_poly_divmod(poly_mul(eg.u, e_h), m).rem;
                return ring_poly_value(r, astar);
            }
            return std::nullopt;
        }
        case RingKind::Product: {
            const auto& parts = value_tuple(a);
            std::vector<RingValue> out;
            for (const auto& p : parts) {
                auto q = ring_try_quasi_inverse(p);
                if (!q) return std::nullopt;
                out.push_back(*q);
            }
            return ring_tuple(r, std::move(out));
        }
        default:
            // tree-leaf rings where the element already became zero or
            // invertible
            if (ring_is_zero(a)) return a;
            return ring_try_invert(a);
    }
}

RingValue ring_annihilator_idempotent(const RingValue& a) {
    const RingPtr& r = a.ring;
    if (ring_is_domain(r)) return ring_is_zero(a) ? ring_zero(r) : ring_one(r);
    if (ring_is_zdr(r)) {
        auto q = ring_try_quasi_inverse(a);
        if (!q) throw validation_error("no quasi-inverse available in " + r->name());
        return ring_mul(a, *q);
    }
    switch (r->kind) {
        case RingKind::Product: {
            const auto& parts = value_tuple(a);
            std::vector<RingValue> out;
            for (const auto& p : parts) out.push_back(ring_annihilator_idempotent(p));
            return ring_tuple(r, std::move(out));
        }
        case RingKind::Univariate:
        case RingKind::Multivariate: {
            // Ann(f) = <(1-e_{c_1})···(1-e_{c_k})> over a pp coefficient ring
            RingValue prod = ring_one(r->base);
            for (const auto& c : poly_coefficients(value_poly(a))) {
                RingValue ec = ring_annihilator_idempotent(c);
                prod = ring_mul(prod, ring_sub(ring_one(r->base), ec));
            }
            RingValue e = ring_sub(ring_one(r->base), prod);
            return ring_poly_value(r, MultiPoly::constant(payload_ring(r), payload_vars(r), e));
        }
        default: throw validation_error("ring is not in the pp-ring family: " + r->name());
    }
}

// ---- unit normalization ----

namespace {

// The unit factor of a value: sign in Z, the scalar itself in a field, the
// recursively-extracted unit of the leading coefficient in polynomial towers,
// regularized idempotent complement in zdr rings.
RingValue unit_part(const RingValue& a) {
    const RingPtr& r = a.ring;
    if (ring_is_zero(a) || ring_is_trivial(r)) return ring_one(r);
    switch (r->kind) {
        case RingKind::Integers: return RingValue(r, Int(value_int(a) < 0 ? -1 : 1));
        case RingKind::Rationals: return a;
        case RingKind::PrimeField: return a;
        case RingKind::FractionField: return a;
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::SemigroupSubring: {
            const MultiPoly& p = value_poly(a);
            RingValue lead = p.terms().rbegin()->second;
            RingValue u = unit_part(lead);
            return ring_poly_value(r, MultiPoly::constant(payload_ring(r), payload_vars(r), u));
        }
        case RingKind::Product: {
            const auto& parts = value_tuple(a);
            std::vector<RingValue> out;
            for (const auto& p : parts) out.push_back(unit_part(p));
            return ring_tuple(r, std::move(out));
        }
        case RingKind::ReducedQuotient: {
            // ã = a + (1 - e_a) is the canonical unit with a = ã·e_a
            RingValue e = ring_annihilator_idempotent(a);
            return ring_add(a, ring_sub(ring_one(r), e));
        }
        case RingKind::Localization: {
            const auto& l = value_loc(a);
            RingValue u = unit_part(l.num);
            auto lp = std::make_shared<const LocPayload>(LocPayload{u, l.den_pow});
            return RingValue(r, lp);
        }
        default: return ring_one(r);
    }
}

}  // namespace

std::pair<RingValue, RingValue> ring_unit_normalize(const RingValue& a) {
    RingValue u = unit_part(a);
    auto uinv = ring_try_invert(u);
    if (!uinv) throw internal_error("unit_part produced a non-unit in " + a.ring->name());
    return {u, ring_mul(*uinv, a)};
}

// ---- transport ----

namespace {

std::optional<RingValue> try_transport(const RingValue& v, const RingPtr& target) {
    if (ring_eq(v.ring, target)) return v;
    const RingPtr& src = v.ring;

    if (ring_is_trivial(target)) return ring_zero(target);

    // scalar sources
    if (src->kind == RingKind::Integers) return ring_from_int(target, value_int(v));
    if (src->kind == RingKind::Rationals) {
        try {
            return ring_from_rat(target, value_rat(v));
        } catch (const validation_error&) {
            return std::nullopt;
        }
    }

    // componentwise between products of equal arity
    if (src->kind == RingKind::Product && target->kind == RingKind::Product &&
        src->factors.size() == target->factors.size()) {
        const auto& parts = value_tuple(v);
        std::vector<RingValue> out;
        for (size_t i = 0; i < parts.size(); ++i) {
            auto t = try_transport(parts[i], target->factors[i]);
            if (!t) return std::nullopt;
            out.push_back(*t);
        }
        return ring_tuple(target, std::move(out));
    }

    // polynomial constants drop to the coefficient ring and retry
    if (poly_payload_kind(src->kind) && value_poly(v).is_constant()) {
        RingValue c = value_poly(v).constant_value();
        auto down = try_transport(c, target);
        if (down) return down;
    }

    // fractions with denominator 1 drop to the base polynomial ring
    if (src->kind == RingKind::FractionField) {
        const auto& f = value_frac(v);
        if (f.den->is_constant()) {
            RingValue num(src->base, f.num);
            auto down = try_transport(num, target);
            if (down) return down;
        }
    }

    // semigroup subring values embed in the ambient polynomial ring first
    if (src->kind == RingKind::SemigroupSubring) {
        RingPtr ambient = ring_univariate(src->base, src->vars[0]);
        RingValue amb(ambient, std::get<PolyPtr>(v.payload));
        if (ring_eq(ambient, target)) return amb;
        auto up = try_transport(amb, target);
        if (up) return up;
    }

    switch (target->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: {
            // same shape with transportable coefficients
            if (poly_payload_kind(src->kind) && payload_vars(src) == payload_vars(target)) {
                const MultiPoly& p = value_poly(v);
                MultiPoly::TermMap terms;
                bool ok = true;
                for (const auto& [e, c] : p.terms()) {
                    auto tc = try_transport(c, payload_ring(target));
                    if (!tc) {
                        ok = false;
                        break;
                    }
                    terms.emplace(e, *tc);
                }
                if (ok)
                    return ring_poly_value(target, MultiPoly::from_terms(payload_ring(target),
                                                                         payload_vars(target),
                                                                         std::move(terms)));
            }
            // constant embedding
            auto c = try_transport(v, target->base);
            if (!c) return std::nullopt;
            return ring_poly_value(target, MultiPoly::constant(payload_ring(target),
                                                               payload_vars(target), *c));
        }
        case RingKind::SemigroupSubring: {
            RingPtr ambient = ring_univariate(target->base, target->vars[0]);
            auto amb = try_transport(v, ambient);
            if (!amb) return std::nullopt;
            const MultiPoly& p = value_poly(*amb);
            for (const auto& [e, c] : p.terms())
                if (!semigroup_contains(target->semigroup, e[0])) return std::nullopt;
            return RingValue(target, std::get<PolyPtr>(amb->payload));
        }
        case RingKind::ReducedQuotient: {
            auto b = try_transport(v, target->base);
            if (!b) return std::nullopt;
            if (target->base->kind == RingKind::Integers)
                return RingValue(target, int_mod(value_int(*b), value_int(target->quot_modulus)));
            return ring_poly_value(target, value_poly(*b));
        }
        case RingKind::Localization: {
            auto b = try_transport(v, target->base);
            if (!b) return std::nullopt;
            return make_loc(target, *b, 0);
        }
        case RingKind::FractionField: {
            auto b = try_transport(v, target->base);
            if (!b) return std::nullopt;
            MultiPoly den = MultiPoly::constant(payload_ring(target), payload_vars(target),
                                                ring_one(payload_ring(target)));
            return make_frac(target, value_poly(*b), std::move(den));
        }
        default: return std::nullopt;
    }
}

}  // namespace

RingValue ring_transport(const RingValue& v, const RingPtr& target) {
    auto t = try_transport(v, target);
    if (!t)
        throw validation_error("no canonical map from " + v.ring->name() + " to " + target->name() +
                               " for this value");
    return *t;
}

bool ring_can_transport(const RingValue& v, const RingPtr& target) {
    return try_transport(v, target).has_value();
}

bool ring_membership(const RingValue& x, const RingPtr& sub) {
    if (ring_eq(x.ring, sub)) return true;
    if (sub->kind == RingKind::SemigroupSubring) {
        RingPtr ambient = ring_univariate(sub->base, sub->vars[0]);
        if (ring_eq(x.ring, ambient)) {
            for (const auto& [e, c] : value_poly(x).terms())
                if (!semigroup_contains(sub->semigroup, e[0])) return false;
            return true;
        }
        if (x.ring->kind == RingKind::FractionField && ring_eq(x.ring->base, ambient)) {
            const auto& f = value_frac(x);
            if (f.den->degree_in(0) != 0) return false;
            RingValue amb(ambient, f.num);
            return ring_membership(amb, sub);
        }
        if (x.ring->kind == RingKind::SemigroupSubring && ring_eq(x.ring->base, sub->base) &&
            x.ring->vars == sub->vars) {
            for (const auto& [e, c] : value_poly(x).terms())
                if (!semigroup_contains(sub->semigroup, e[0])) return false;
            return true;
        }
        return false;
    }
    return ring_can_transport(x, sub);
}

}  // namespace semnorm
