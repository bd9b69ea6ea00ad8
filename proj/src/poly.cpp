#include "semnorm/poly.hpp"

#include <algorithm>

namespace semnorm {

unsigned exps_total(const Exps& e) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    return s;
}

Exps exps_add(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool GrlexLess::operator()(const Exps& a, const Exps& b) const {
    unsigned da = exps_total(a), db = exps_total(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(RingPtr coeff_ring, std::vector<std::string> vars)
    : coeff_ring_(std::move(coeff_ring)), vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(RingPtr coeff_ring, std::vector<std::string> vars, RingValue c) {
    MultiPoly p(coeff_ring, std::move(vars));
    if (!ring_eq(c.ring, coeff_ring)) throw validation_error("polynomial coefficient ring mismatch");
    if (!ring_is_zero(c)) p.terms_.emplace(Exps(p.vars_.size(), 0), std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(RingPtr coeff_ring, std::vector<std::string> vars, size_t var_index,
                              unsigned exp) {
    MultiPoly p(coeff_ring, std::move(vars));
    if (var_index >= p.vars_.size()) throw validation_error("variable index out of range");
    Exps e(p.vars_.size(), 0);
    e[var_index] = exp;
    RingValue one = ring_one(coeff_ring);
    if (ring_is_zero(one)) return p;  // trivial coefficient ring
    p.terms_.emplace(std::move(e), std::move(one));
    return p;
}

MultiPoly MultiPoly::from_terms(RingPtr coeff_ring, std::vector<std::string> vars, TermMap terms) {
    MultiPoly p(coeff_ring, std::move(vars));
    for (auto& [e, c] : terms) {
        if (e.size() != p.vars_.size()) throw validation_error("exponent arity mismatch");
        if (!ring_eq(c.ring, coeff_ring)) throw validation_error("polynomial coefficient ring mismatch");
        if (!ring_is_zero(c)) p.terms_.emplace(e, c);
    }
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exps_total(terms_.begin()->first) == 0);
}

RingValue MultiPoly::constant_value() const {
    Exps zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    if (it == terms_.end()) return ring_zero(coeff_ring_);
    return it->second;
}

unsigned MultiPoly::degree_in(size_t var_index) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var_index]);
    return d;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, exps_total(e));
    return d;
}

RingValue MultiPoly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return ring_zero(coeff_ring_);
    return it->second;
}

namespace {

void check_compatible(const MultiPoly& p, const MultiPoly& q) {
    if (!ring_eq(p.coeff_ring(), q.coeff_ring()) || p.vars() != q.vars())
        throw validation_error("polynomial ring/arity mismatch");
}

}  // namespace

MultiPoly poly_add(const MultiPoly& p, const MultiPoly& q) {
    check_compatible(p, q);
    MultiPoly::TermMap terms = p.terms();
    for (const auto& [e, c] : q.terms()) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            RingValue s = ring_add(it->second, c);
            if (ring_is_zero(s))
                terms.erase(it);
            else
                it->second = s;
        }
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

MultiPoly poly_neg(const MultiPoly& p) {
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) terms.emplace(e, ring_neg(c));
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

MultiPoly poly_sub(const MultiPoly& p, const MultiPoly& q) { return poly_add(p, poly_neg(q)); }

MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q) {
    check_compatible(p, q);
    MultiPoly::TermMap terms;
    for (const auto& [e1, c1] : p.terms()) {
        for (const auto& [e2, c2] : q.terms()) {
            RingValue c = ring_mul(c1, c2);
            if (ring_is_zero(c)) continue;
            Exps e = exps_add(e1, e2);
            auto it = terms.find(e);
            if (it == terms.end()) {
                terms.emplace(std::move(e), std::move(c));
            } else {
                RingValue s = ring_add(it->second, c);
                if (ring_is_zero(s))
                    terms.erase(it);
                else
                    it->second = s;
            }
        }
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

MultiPoly poly_scalar_mul(const RingValue& c, const MultiPoly& p) {
    MultiPoly::TermMap terms;
    for (const auto& [e, v] : p.terms()) {
        RingValue w = ring_mul(c, v);
        if (!ring_is_zero(w)) terms.emplace(e, std::move(w));
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

MultiPoly poly_pow(const MultiPoly& p, unsigned e) {
    MultiPoly r = MultiPoly::constant(p.coeff_ring(), p.vars(), ring_one(p.coeff_ring()));
    MultiPoly b = p;
    while (e > 0) {
        if (e & 1u) r = poly_mul(r, b);
        e >>= 1u;
        if (e > 0) b = poly_mul(b, b);
    }
    return r;
}

bool poly_eq(const MultiPoly& p, const MultiPoly& q) {
    if (!ring_eq(p.coeff_ring(), q.coeff_ring()) || p.vars() != q.vars()) return false;
    if (p.terms().size() != q.terms().size()) return false;
    auto it = q.terms().begin();
    for (const auto& [e, c] : p.terms()) {
        if (e != it->first || !ring_value_eq(c, it->second)) return false;
        ++it;
    }
    return true;
}

MultiPoly poly_substitute(const MultiPoly& p, size_t var_index, const RingValue& v) {
    if (var_index >= p.vars().size()) throw validation_error("variable index out of range");
    MultiPoly out(p.coeff_ring(), p.vars());
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) {
        RingValue coeff = ring_mul(c, ring_pow(v, e[var_index]));
        if (ring_is_zero(coeff)) continue;
        Exps e2 = e;
        e2[var_index] = 0;
        auto it = terms.find(e2);
        if (it == terms.end()) {
            terms.emplace(std::move(e2), std::move(coeff));
        } else {
            RingValue s = ring_add(it->second, coeff);
            if (ring_is_zero(s))
                terms.erase(it);
            else
                it->second = s;
        }
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

RingValue poly_eval_at_zero(const MultiPoly& p) { return p.constant_value(); }

std::optional<MultiPoly> poly_try_exact_div(const MultiPoly& p, const MultiPoly& q) {
    check_compatible(p, q);
    if (q.is_zero()) return std::nullopt;
    MultiPoly rem = p;
    MultiPoly::TermMap quot_terms;
    const auto& qlead = *q.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        // exponent difference must be nonnegative
        Exps diff(rlead.first.size());
        bool ok = true;
        for (size_t i = 0; i < diff.size(); ++i) {
            if (rlead.first[i] < qlead.first[i]) {
                ok = false;
                break;
            }
            diff[i] = rlead.first[i] - qlead.first[i];
        }
        if (!ok) return std::nullopt;
        auto c = ring_try_exact_div(rlead.second, qlead.second);
        if (!c) return std::nullopt;
        MultiPoly::TermMap t;
        t.emplace(diff, *c);
        MultiPoly mono = MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(t));
        quot_terms.emplace(std::move(diff), std::move(*c));
        rem = poly_sub(rem, poly_mul(mono, q));
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(quot_terms));
}

std::optional<MultiPoly> poly_try_invert(const MultiPoly& p) {
    const RingPtr& R = p.coeff_ring();
    if (ring_is_trivial(R)) return MultiPoly::constant(R, p.vars(), ring_zero(R));
    if (ring_is_reduced(R)) {
        if (!p.is_constant()) return std::nullopt;
        auto inv = ring_try_invert(p.constant_value());
        if (!inv) return std::nullopt;
        return MultiPoly::constant(R, p.vars(), *inv);
    }
    if (R->kind != RingKind::DualNumbers) return std::nullopt;
    // p is a unit iff p(0...0) is a unit and every other coefficient is
    // nilpotent; invert by a geometric series truncated at the nilpotency
    // order.
    auto c0inv = ring_try_invert(p.constant_value());
    if (!c0inv) return std::nullopt;
    MultiPoly one = MultiPoly::constant(R, p.vars(), ring_one(R));
    MultiPoly n = poly_sub(one, poly_scalar_mul(*c0inv, p));  // nilpotent part, no constant term?
    // n may still carry a nilpotent constant; nilpotency of all coefficients
    // is what the series needs.
    for (const auto& [e, c] : n.terms()) {
        // coefficient must be nilpotent: its eps-valuation positive
        if (!ring_is_zero(c)) {
            const MultiPoly& payload = value_poly(c);
            if (!payload.constant_value().valid() || !ring_is_zero(payload.constant_value()))
                return std::nullopt;
        }
    }
    unsigned k = R->dual_order;
    MultiPoly inv = one;
    MultiPoly power = one;
    for (unsigned i = 1; i < k; ++i) {
        power = poly_mul(power, n);
        if (power.is_zero()) break;
        inv = poly_add(inv, power);
    }
    inv = poly_scalar_mul(*c0inv, inv);
    // final check
    if (!poly_eq(poly_mul(inv, p), one)) return std::nullopt;
    return inv;
}

MultiPoly kronecker_substitute(const MultiPoly& p, unsigned m, const std::string& out_var) {
    if (m == 0) throw validation_error("kronecker substitution requires m >= 1");
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) {
        unsigned long long exp = 0;
        unsigned long long mk = m;
        for (size_t k = 0; k < e.size(); ++k) {
            exp += static_cast<unsigned long long>(e[k]) * mk;
            mk *= m;
        }
        Exps e2{static_cast<unsigned>(exp)};
        auto it = terms.find(e2);
        if (it == terms.end()) {
            terms.emplace(std::move(e2), c);
        } else {
            RingValue s = ring_add(it->second, c);
            if (ring_is_zero(s))
                terms.erase(it);
            else
                it->second = s;
        }
    }
    return MultiPoly::from_terms(p.coeff_ring(), {out_var}, std::move(terms));
}

unsigned kronecker_min_m(const std::vector<MultiPoly>& ps) {
    unsigned d = 0;
    for (const auto& p : ps)
        for (size_t i = 0; i < p.vars().size(); ++i) d = std::max(d, p.degree_in(i));
    return d + 1;
}

std::map<unsigned, MultiPoly> poly_univ_view(const MultiPoly& p, size_t var_index) {
    std::map<unsigned, MultiPoly> out;
    for (const auto& [e, c] : p.terms()) {
        unsigned d = e[var_index];
        Exps e2 = e;
        e2[var_index] = 0;
        auto it = out.find(d);
        if (it == out.end())
            it = out.emplace(d, MultiPoly(p.coeff_ring(), p.vars())).first;
        MultiPoly::TermMap t = it->second.terms();
        t.emplace(std::move(e2), c);
        it->second = MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(t));
    }
    return out;
}

MultiPoly poly_from_univ_view(const RingPtr& ring, const std::vector<std::string>& vars,
                              size_t var_index, const std::map<unsigned, MultiPoly>& coeffs) {
    MultiPoly out(ring, vars);
    for (const auto& [d, c] : coeffs) {
        MultiPoly xd = MultiPoly::variable(ring, vars, var_index, d);
        out = poly_add(out, poly_mul(xd, c));
    }
    return out;
}

std::vector<RingValue> poly_coefficients(const MultiPoly& p) {
    std::vector<RingValue> out;
    out.reserve(p.terms().size());
    for (const auto& [e, c] : p.terms()) out.push_back(c);
    return out;
}

// ---- univariate field helpers ----

namespace {

void check_univ_field(const MultiPoly& a) {
    if (a.vars().size() != 1) throw internal_error("univariate helper on multivariate input");
    if (!ring_is_field(a.coeff_ring())) throw internal_error("univariate helper needs a field");
}

RingValue lead_coeff(const MultiPoly& a) { return a.terms().rbegin()->second; }

}  // namespace

FieldDivMod field_poly_divmod(const MultiPoly& a, const MultiPoly& b) {
    check_univ_field(a);
    if (b.is_zero()) throw validation_error("polynomial division by zero");
    MultiPoly q(a.coeff_ring(), a.vars());
    MultiPoly r = a;
    unsigned db = b.degree_in(0);
    RingValue lb_inv = *ring_try_invert(lead_coeff(b));
    while (!r.is_zero() && r.degree_in(0) >= db) {
        unsigned dr = r.degree_in(0);
        RingValue c = ring_mul(r.terms().rbegin()->second, lb_inv);
        MultiPoly mono = poly_scalar_mul(c, MultiPoly::variable(a.coeff_ring(), a.vars(), 0, dr - db));
        q = poly_add(q, mono);
        r = poly_sub(r, poly_mul(mono, b));
    }
    return {q, r};
}

MultiPoly field_poly_monic(const MultiPoly& a) {
    if (a.is_zero()) return a;
    RingValue inv = *ring_try_invert(lead_coeff(a));
    return poly_scalar_mul(inv, a);
}

MultiPoly field_poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    check_univ_field(a);
    MultiPoly x = a, y = b;
    while (!y.is_zero()) {
        MultiPoly r = field_poly_divmod(x, y).rem;
        x = y;
        y = r;
    }
    return field_poly_monic(x);
}

FieldExtGcd field_poly_ext_gcd(const MultiPoly& a, const MultiPoly& b) {
    check_univ_field(a);
    const RingPtr& K = a.coeff_ring();
    MultiPoly r0 = a, r1 = b;
    MultiPoly s0 = MultiPoly::constant(K, a.vars(), ring_one(K)), s1 = MultiPoly(K, a.vars());
    MultiPoly t0 = MultiPoly(K, a.vars()), t1 = MultiPoly::constant(K, a.vars(), ring_one(K));
    while (!r1.is_zero()) {
        auto dm = field_poly_divmod(r0, r1);
        MultiPoly r2 = dm.rem;
        MultiPoly s2 = poly_sub(s0, poly_mul(dm.quot, s1));
        MultiPoly t2 = poly_sub(t0, poly_mul(dm.quot, t1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    RingValue inv = *ring_try_invert(lead_coeff(r0));
    return {poly_scalar_mul(inv, r0), poly_scalar_mul(inv, s0), poly_scalar_mul(inv, t0)};
}

MultiPoly field_poly_derivative(const MultiPoly& a) {
    check_univ_field(a);
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : a.terms()) {
        if (e[0] == 0) continue;
        RingValue k = ring_from_int(a.coeff_ring(), Int(e[0]));
        RingValue cc = ring_mul(c, k);
        if (ring_is_zero(cc)) continue;
        terms.emplace(Exps{e[0] - 1}, std::move(cc));
    }
    return MultiPoly::from_terms(a.coeff_ring(), a.vars(), std::move(terms));
}

MultiPoly field_poly_squarefree_part(const MultiPoly& a) {
    check_univ_field(a);
    if (a.is_zero()) return a;
    if (a.degree_in(0) == 0) return MultiPoly::constant(a.coeff_ring(), a.vars(), ring_one(a.coeff_ring()));
    MultiPoly d = field_poly_derivative(a);
    if (d.is_zero()) {
        // char p and a = w(t^p) with w built from the same scalars (Frobenius
        // is the identity on a prime field), so rad(a) = rad(w).
        const RingPtr& K = a.coeff_ring();
        if (K->kind != RingKind::PrimeField)
            throw validation_error("no squarefree-part algorithm for this coefficient field");
        unsigned long p = K->char_p.get_ui();
        MultiPoly::TermMap terms;
        for (const auto& [e, c] : a.terms()) {
            if (e[0] % p != 0) throw internal_error("zero derivative without p-th power shape");
            terms.emplace(Exps{static_cast<unsigned>(e[0] / p)}, c);
        }
        return field_poly_squarefree_part(MultiPoly::from_terms(K, a.vars(), std::move(terms)));
    }
    MultiPoly g = field_poly_gcd(a, d);
    MultiPoly part = field_poly_divmod(a, g).quot;
    // In char p the quotient can still share p-th power factors with g.
    MultiPoly rest = g;
    MultiPoly h = field_poly_gcd(rest, poly_pow(part, rest.degree_in(0) + 1));
    MultiPoly extra = field_poly_divmod(rest, h).quot;
    if (extra.degree_in(0) > 0)
        return field_poly_monic(poly_mul(part, field_poly_squarefree_part(extra)));
    return field_poly_monic(part);
}

}  // namespace semnorm
