#include "semnorm/gcdpoly.hpp"

#include <algorithm>
#include <atomic>

#include "semnorm/polytext.hpp"

namespace semnorm {

namespace {
std::atomic<size_t> g_max_leaves{4096};
}  // namespace

size_t max_leaves() { return g_max_leaves.load(); }
void set_max_leaves(size_t n) { g_max_leaves.store(n == 0 ? 1 : n); }

namespace {

void require_family(const RingPtr& r) {
    if (!ring_is_gcd_family(r))
        throw validation_error("ring outside the gcd pp-ring family: " + r->name());
}

// canonical associate of a nonzero polynomial: leading coefficient replaced by
// its canonical unit-normalized form
MultiPoly poly_canonical_assoc(const MultiPoly& p) {
    if (p.is_zero()) return p;
    RingValue lead = p.terms().rbegin()->second;
    auto [u, canon] = ring_unit_normalize(lead);
    auto uinv = ring_try_invert(u);
    if (!uinv) throw internal_error("unit normalization failed");
    return poly_scalar_mul(*uinv, p);
}

// ---- product decomposition ----

MultiPoly poly_component(const MultiPoly& p, size_t i) {
    const RingPtr& f = p.coeff_ring()->factors[i];
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) {
        const RingValue& ci = value_tuple(c)[i];
        if (!ring_is_zero(ci)) terms.emplace(e, ci);
    }
    return MultiPoly::from_terms(f, p.vars(), std::move(terms));
}

MultiPoly poly_recombine(const RingPtr& product, const std::vector<std::string>& vars,
                         const std::vector<MultiPoly>& comps) {
    // union of supports; missing coefficients are zero
    std::map<Exps, std::vector<RingValue>, GrlexLess> gather;
    for (size_t i = 0; i < comps.size(); ++i) {
        for (const auto& [e, c] : comps[i].terms()) {
            auto it = gather.find(e);
            if (it == gather.end()) {
                std::vector<RingValue> parts;
                for (const auto& f : product->factors) parts.push_back(ring_zero(f));
                it = gather.emplace(e, std::move(parts)).first;
            }
            it->second[i] = c;
        }
    }
    MultiPoly::TermMap terms;
    for (auto& [e, parts] : gather) terms.emplace(e, ring_tuple(product, std::move(parts)));
    return MultiPoly::from_terms(product, vars, std::move(terms));
}

// ---- nesting the last variable for multivariate recursion ----

RingPtr inner_ring_for(const MultiPoly& p) {
    const auto& vars = p.vars();
    std::vector<std::string> inner(vars.begin(), vars.end() - 1);
    if (inner.size() == 1) return ring_univariate(p.coeff_ring(), inner[0]);
    return ring_multivariate(p.coeff_ring(), inner);
}

MultiPoly nest_last(const MultiPoly& p, const RingPtr& inner) {
    const auto& vars = p.vars();
    size_t k = vars.size() - 1;
    std::vector<std::string> inner_vars(vars.begin(), vars.end() - 1);
    std::map<unsigned, MultiPoly::TermMap> slices;
    for (const auto& [e, c] : p.terms()) {
        Exps ie(e.begin(), e.end() - 1);
        slices[e[k]].emplace(std::move(ie), c);
    }
    MultiPoly::TermMap out;
    for (auto& [d, tm] : slices) {
        MultiPoly coeff = MultiPoly::from_terms(p.coeff_ring(), inner_vars, std::move(tm));
        out.emplace(Exps{d}, ring_poly_value(inner, coeff));
    }
    return MultiPoly::from_terms(inner, {vars[k]}, std::move(out));
}

MultiPoly unnest_last(const MultiPoly& nested, const RingPtr& orig_ring,
                      const std::vector<std::string>& orig_vars) {
    MultiPoly::TermMap out;
    for (const auto& [e, c] : nested.terms()) {
        for (const auto& [ie, ic] : value_poly(c).terms()) {
            Exps full = ie;
            full.push_back(e[0]);
            out.emplace(std::move(full), ic);
        }
    }
    return MultiPoly::from_terms(orig_ring, orig_vars, std::move(out));
}

// ---- field-like division with split requests ----

RingValue inv_or_split(const RingValue& c) {
    auto inv = ring_try_invert(c);
    if (inv) return *inv;
    if (ring_is_zero(c)) throw internal_error("division by zero in a leaf computation");
    throw SplitRequest{c};
}

// univariate Euclid treating the coefficient ring as a field; throws
// SplitRequest at a non-invertible nonzero leading coefficient
MultiPoly euclid_split_gcd(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly x = a, y = b;
    while (!y.is_zero()) {
        RingValue inv = inv_or_split(y.terms().rbegin()->second);
        unsigned dy = y.degree_in(0);
        MultiPoly r = x;
        while (!r.is_zero() && r.degree_in(0) >= dy) {
            unsigned dr = r.degree_in(0);
            RingValue c = ring_mul(r.terms().rbegin()->second, inv);
            MultiPoly mono =
                poly_scalar_mul(c, MultiPoly::variable(r.coeff_ring(), r.vars(), 0, dr - dy));
            r = poly_sub(r, poly_mul(mono, y));
        }
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return poly_scalar_mul(inv_or_split(x.terms().rbegin()->second), x);
}

// ---- gcd-domain pseudo-remainder sequence ----

MultiPoly pseudo_rem(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    unsigned db = b.degree_in(0);
    RingValue lcb = b.terms().rbegin()->second;
    while (!r.is_zero() && r.degree_in(0) >= db) {
        unsigned dr = r.degree_in(0);
        RingValue lcr = r.terms().rbegin()->second;
        MultiPoly shift = MultiPoly::variable(r.coeff_ring(), r.vars(), 0, dr - db);
        r = poly_sub(poly_scalar_mul(lcb, r), poly_mul(poly_scalar_mul(lcr, shift), b));
    }
    return r;
}

MultiPoly strip_content(const MultiPoly& p) {
    if (p.is_zero()) return p;
    RingValue c = content(p).value;
    MultiPoly::TermMap terms;
    for (const auto& [e, v] : p.terms()) {
        auto q = ring_try_exact_div(v, c);
        if (!q) throw internal_error("content does not divide a coefficient");
        terms.emplace(e, *q);
    }
    return MultiPoly::from_terms(p.coeff_ring(), p.vars(), std::move(terms));
}

MultiPoly poly_gcd_nosplit(const MultiPoly& f, const MultiPoly& g);

MultiPoly univ_gcd(const MultiPoly& f, const MultiPoly& g) {
    const RingPtr& r = f.coeff_ring();
    if (f.is_zero()) return poly_canonical_assoc(g);
    if (g.is_zero()) return poly_canonical_assoc(f);
    if (ring_is_field(r)) return field_poly_gcd(f, g);
    if (ring_is_zdr(r)) return euclid_split_gcd(f, g);
    // gcd domain: contents split off, primitive remainder sequence
    RingValue cf = content(f).value;
    RingValue cg = content(g).value;
    RingValue c = base_gcd(cf, cg);
    MultiPoly fp = strip_content(f);
    MultiPoly gp = strip_content(g);
    while (!gp.is_zero()) {
        MultiPoly rem = strip_content(pseudo_rem(fp, gp));
        fp = gp;
        gp = rem;
    }
    return poly_canonical_assoc(poly_scalar_mul(c, fp));
}

MultiPoly poly_gcd_nosplit(const MultiPoly& f, const MultiPoly& g) {
    if (!ring_eq(f.coeff_ring(), g.coeff_ring()) || f.vars() != g.vars())
        throw validation_error("polynomial ring/arity mismatch in gcd");
    const RingPtr& r = f.coeff_ring();
    require_family(r);
    if (r->kind == RingKind::Product) {
        std::vector<MultiPoly> comps;
        for (size_t i = 0; i < r->factors.size(); ++i)
            comps.push_back(poly_gcd_nosplit(poly_component(f, i), poly_component(g, i)));
        return poly_recombine(r, f.vars(), comps);
    }
    if (f.vars().empty()) {
        return MultiPoly::constant(r, {}, base_gcd(f.constant_value(), g.constant_value()));
    }
    if (f.vars().size() == 1) return univ_gcd(f, g);
    RingPtr inner = inner_ring_for(f);
    MultiPoly res = univ_gcd(nest_last(f, inner), nest_last(g, inner));
    return unnest_last(res, r, f.vars());
}

// ---- leafwise driver over quotient-presented zero-dimensional rings ----

struct LeafSlot {
    int id;
    RingPtr ring;
};

// Runs fn over tree leaves, splitting on demand. fn receives the leaf id and
// must pull its inputs through tree.image_poly.
template <typename Out, typename Fn>
std::pair<ComponentTree, std::vector<std::pair<int, Out>>> solve_leafwise(
    const RingPtr& root, Fn&& fn, std::vector<std::string>* trace) {
    ComponentTree tree(root);
    std::vector<std::pair<int, Out>> done;
    std::vector<int> pending{0};
    while (!pending.empty()) {
        if (tree.size() > 2 * max_leaves())
            throw resource_error("component decomposition exceeded the leaf bound");
        int leaf = pending.back();
        pending.pop_back();
        try {
            done.emplace_back(leaf, fn(leaf, tree));
        } catch (const SplitRequest& req) {
            if (trace)
                trace->push_back(tree.node(leaf).ring->name() + ": split at " +
                                 value_to_string(req.element));
            auto [qi, li] = tree.split_leaf(leaf, req.element);
            if (qi >= 0) pending.push_back(qi);
            if (li >= 0) pending.push_back(li);
        }
    }
    return {std::move(tree), std::move(done)};
}

// CRT across a split: parent quotient ring, children quotient rings.
RingValue crt_values(const RingPtr& parent, const RingPtr& qring, const RingValue& vq,
                     const RingPtr& lring, const RingValue& vl) {
    if (parent->base->kind == RingKind::Integers) {
        const Int& g = value_int(qring->quot_modulus);
        const Int& h = value_int(lring->quot_modulus);
        return RingValue(parent, int_crt(value_int(vq), g, value_int(vl), h));
    }
    const MultiPoly& g = value_poly(qring->quot_modulus);
    const MultiPoly& h = value_poly(lring->quot_modulus);
    auto eg = field_poly_ext_gcd(g, h);  // u·g + v·h = 1
    // x = vq·v·h + vl·u·g
    MultiPoly x = poly_add(poly_mul(poly_mul(value_poly(vq), eg.v), h),
                           poly_mul(poly_mul(value_poly(vl), eg.u), g));
    return ring_poly_value(parent, x);
}

MultiPoly crt_polys(const RingPtr& parent, const RingPtr& qring, const MultiPoly& pq,
                    const RingPtr& lring, const MultiPoly& pl) {
    std::map<Exps, std::pair<RingValue, RingValue>, GrlexLess> gather;
    for (const auto& [e, c] : pq.terms()) gather[e].first = c;
    for (const auto& [e, c] : pl.terms()) gather[e].second = c;
    MultiPoly::TermMap terms;
    for (auto& [e, pair] : gather) {
        RingValue vq = pair.first.valid() ? pair.first : ring_zero(qring);
        RingValue vl = pair.second.valid() ? pair.second : ring_zero(lring);
        RingValue merged = crt_values(parent, qring, vq, lring, vl);
        if (!ring_is_zero(merged)) terms.emplace(e, merged);
    }
    return MultiPoly::from_terms(parent, pq.vars(), std::move(terms));
}

// Merge leaf polynomials up the tree into a root-ring polynomial.
MultiPoly merge_leaf_polys(const ComponentTree& tree, int node,
                           const std::map<int, MultiPoly>& leaf_values) {
    const auto& nd = tree.node(node);
    if (!nd.is_split) {
        auto it = leaf_values.find(node);
        if (it == leaf_values.end()) throw internal_error("missing leaf result");
        return it->second;
    }
    if (nd.quotient_child < 0) {
        MultiPoly sub = merge_leaf_polys(tree, nd.local_child, leaf_values);
        return sub;  // localization child carries the whole ring
    }
    if (nd.local_child < 0) {
        return merge_leaf_polys(tree, nd.quotient_child, leaf_values);
    }
    MultiPoly pq = merge_leaf_polys(tree, nd.quotient_child, leaf_values);
    MultiPoly pl = merge_leaf_polys(tree, nd.local_child, leaf_values);
    return crt_polys(nd.ring, tree.node(nd.quotient_child).ring, pq,
                     tree.node(nd.local_child).ring, pl);
}

bool ring_is_quotient_zdr(const RingPtr& r) {
    return r->kind == RingKind::ReducedQuotient && !ring_is_field(r);
}

}  // namespace

// ---- public surface ----

RingValue base_gcd(const RingValue& a, const RingValue& b) {
    if (!ring_eq(a.ring, b.ring)) throw validation_error("gcd operands in different rings");
    const RingPtr& r = a.ring;
    require_family(r);
    if (ring_is_zero(a) && ring_is_zero(b)) return a;
    if (ring_is_zero(a)) return ring_unit_normalize(b).second;
    if (ring_is_zero(b)) return ring_unit_normalize(a).second;
    switch (r->kind) {
        case RingKind::Integers: {
            Int g = abs(int_gcd(value_int(a), value_int(b)));
            return RingValue(r, g);
        }
        case RingKind::Product: {
            const auto& xa = value_tuple(a);
            const auto& xb = value_tuple(b);
            std::vector<RingValue> out;
            for (size_t i = 0; i < xa.size(); ++i) out.push_back(base_gcd(xa[i], xb[i]));
            return ring_tuple(r, std::move(out));
        }
        case RingKind::Univariate:
        case RingKind::Multivariate:
            return ring_poly_value(r, poly_gcd_nosplit(value_poly(a), value_poly(b)));
        case RingKind::Localization: {
            RingValue g0 = base_gcd(value_loc(a).num, value_loc(b).num);
            // powers of the inverted element are units; strip them
            while (true) {
                auto q = ring_try_exact_div(g0, r->loc_element);
                if (!q) break;
                g0 = *q;
            }
            RingValue g = ring_transport(g0, r);
            return ring_unit_normalize(g).second;
        }
        default:
            if (ring_is_field(r)) return ring_one(r);
            if (ring_is_zdr(r)) {
                // <a, b> = <e> with e = 1 - (1-e_a)(1-e_b)
                RingValue ea = ring_annihilator_idempotent(a);
                RingValue eb = ring_annihilator_idempotent(b);
                RingValue prod = ring_mul(ring_sub(ring_one(r), ea), ring_sub(ring_one(r), eb));
                return ring_sub(ring_one(r), prod);
            }
            throw validation_error("no gcd rule for ring " + r->name());
    }
}

Content content(const MultiPoly& f) {
    RingValue g = ring_zero(f.coeff_ring());
    for (const auto& c : poly_coefficients(f)) g = base_gcd(g, c);
    return Content{g};
}

PrimitiveDecomposition primitive_decompose(const MultiPoly& f, const RingPtr& base) {
    const RingPtr& k = f.coeff_ring();
    if (f.is_zero()) {
        MultiPoly one = MultiPoly::constant(base, f.vars(), ring_one(base));
        return PrimitiveDecomposition{ring_zero(k), one};
    }
    if (ring_eq(k, base)) {
        RingValue c = content(f).value;
        return PrimitiveDecomposition{c, strip_content(f)};
    }
    if (k->kind == RingKind::Rationals && base->kind == RingKind::Integers) {
        Int l = 1;
        for (const auto& c : poly_coefficients(f)) l = int_lcm(l, value_rat(c).get_den());
        MultiPoly::TermMap terms;
        for (const auto& [e, c] : f.terms()) {
            Rat scaled = value_rat(c) * Rat(l);
            terms.emplace(e, RingValue(base, Int(scaled.get_num())));
        }
        MultiPoly over_base = MultiPoly::from_terms(base, f.vars(), std::move(terms));
        RingValue c0 = content(over_base).value;
        MultiPoly g = strip_content(over_base);
        return PrimitiveDecomposition{ring_from_rat(k, rat_of(value_int(c0), l)), g};
    }
    if (k->kind == RingKind::FractionField && ring_eq(k->base, base)) {
        // common denominator, then the content over the base
        RingValue den = ring_one(base);
        for (const auto& c : poly_coefficients(f)) {
            const auto& fp = value_frac(c);
            RingValue d(base, fp.den);
            RingValue g = base_gcd(den, d);
            den = *ring_try_exact_div(ring_mul(den, d), g);  // lcm
        }
        MultiPoly::TermMap terms;
        for (const auto& [e, c] : f.terms()) {
            RingValue scaled = ring_mul(ring_transport(den, k), c);
            const auto& sp = value_frac(scaled);
            if (!sp.den->is_constant() || !ring_is_one(sp.den->constant_value()))
                throw internal_error("denominator clearing failed");
            terms.emplace(e, RingValue(base, sp.num));
        }
        MultiPoly over_base = MultiPoly::from_terms(base, f.vars(), std::move(terms));
        RingValue c0 = content(over_base).value;
        MultiPoly g = strip_content(over_base);
        RingValue c = ring_mul(ring_transport(c0, k), *ring_try_invert(ring_transport(den, k)));
        return PrimitiveDecomposition{c, g};
    }
    throw validation_error("no primitive decomposition for " + k->name() + " over " + base->name());
}

namespace {

// the unit u with lhs = u·rhs, componentwise over products (zero components
// relate by 1)
std::optional<RingValue> unit_relating(const RingValue& lhs, const RingValue& rhs) {
    const RingPtr& r = lhs.ring;
    if (r->kind == RingKind::Product) {
        const auto& xa = value_tuple(lhs);
        const auto& xb = value_tuple(rhs);
        std::vector<RingValue> out;
        for (size_t i = 0; i < xa.size(); ++i) {
            auto u = unit_relating(xa[i], xb[i]);
            if (!u) return std::nullopt;
            out.push_back(*u);
        }
        return ring_tuple(r, std::move(out));
    }
    if (ring_is_zero(rhs)) {
        if (!ring_is_zero(lhs)) return std::nullopt;
        return ring_one(r);
    }
    auto u = ring_try_exact_div(lhs, rhs);
    if (!u || !ring_try_invert(*u)) return std::nullopt;
    return u;
}

}  // namespace

RingValue gauss_content(const MultiPoly& f, const MultiPoly& g) {
    RingValue cf = content(f).value;
    RingValue cg = content(g).value;
    RingValue cfg = content(poly_mul(f, g)).value;
    RingValue lhs = ring_mul(cf, cg);
    auto u = unit_relating(lhs, cfg);
    if (!u)
        throw internal_error("content identity violated: G(f)G(g) is not an associate of G(fg)");
    return *u;
}

std::optional<MultiPoly> poly_divides(const MultiPoly& f, const MultiPoly& g) {
    if (!ring_eq(f.coeff_ring(), g.coeff_ring()) || f.vars() != g.vars())
        throw validation_error("polynomial ring/arity mismatch in divisibility");
    const RingPtr& r = f.coeff_ring();
    require_family(r);
    if (r->kind == RingKind::Product) {
        std::vector<MultiPoly> comps;
        for (size_t i = 0; i < r->factors.size(); ++i) {
            auto q = poly_divides(poly_component(f, i), poly_component(g, i));
            if (!q) return std::nullopt;
            comps.push_back(*q);
        }
        return poly_recombine(r, f.vars(), comps);
    }
    return poly_try_exact_div(g, f);
}

MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
    const RingPtr& r = f.coeff_ring();
    if (ring_is_quotient_zdr(r)) {
        // grow a component tree: every inversion request of a zero divisor
        // splits, the leaf gcds merge back through the Chinese remainders
        auto [tree, results] = solve_leafwise<MultiPoly>(
            r,
            [&](int leaf, const ComponentTree& t) {
                return poly_gcd_nosplit(t.image_poly(f, leaf), t.image_poly(g, leaf));
            },
            nullptr);
        std::map<int, MultiPoly> by_leaf;
        for (auto& [id, val] : results) by_leaf.emplace(id, std::move(val));
        return merge_leaf_polys(tree, 0, by_leaf);
    }
    return poly_gcd_nosplit(f, g);
}

// ---- rank-1 factorization over a gcd ring ----

namespace {

MultiPoly leaf_exact_div(const MultiPoly& num, const MultiPoly& den) {
    // division in a (pretend-)field coefficient ring; exact by construction
    if (den.is_zero()) throw internal_error("division by the zero polynomial");
    MultiPoly r = num;
    MultiPoly q(num.coeff_ring(), num.vars());
    const auto& dlead = *den.terms().rbegin();
    RingValue dinv = inv_or_split(dlead.second);
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().rbegin();
        Exps diff(rlead.first.size());
        for (size_t i = 0; i < diff.size(); ++i) {
            if (rlead.first[i] < dlead.first[i])
                throw internal_error("leaf division is not exact (exponent)");
            diff[i] = rlead.first[i] - dlead.first[i];
        }
        RingValue c = ring_mul(rlead.second, dinv);
        MultiPoly::TermMap t;
        t.emplace(diff, c);
        MultiPoly mono = MultiPoly::from_terms(num.coeff_ring(), num.vars(), std::move(t));
        q = poly_add(q, mono);
        r = poly_sub(r, poly_mul(mono, den));
    }
    return q;
}

MultiPoly domain_exact_div(const MultiPoly& num, const MultiPoly& den) {
    auto q = poly_try_exact_div(num, den);
    if (!q) throw internal_error("expected exact polynomial division failed");
    return *q;
}

Rank1Factorization factor_rank1_core(const SquareMatrix& p, bool leaf_mode) {
    size_t n = p.n();
    const RingPtr& ring = p.coeff_ring();
    CornerConjugation corner = conjugate_regular_corner(p);
    const SquareMatrix& m = corner.conjugated;

    // f = gcd of the first row
    MultiPoly f(ring, p.vars());
    for (size_t j = 0; j < n; ++j) f = poly_gcd_nosplit(f, m.at(0, j));
    if (f.is_zero()) throw internal_error("zero first row in a certified rank-1 matrix");

    Rank1Factorization fac;
    fac.g.reserve(n);
    for (size_t j = 0; j < n; ++j)
        fac.g.push_back(leaf_mode ? leaf_exact_div(m.at(0, j), f) : domain_exact_div(m.at(0, j), f));
    fac.f.assign(n, MultiPoly(ring, p.vars()));
    fac.f[0] = f;
    for (size_t i = 1; i < n; ++i)
        fac.f[i] = leaf_mode ? leaf_exact_div(m.at(i, 0), fac.g[0])
                             : domain_exact_div(m.at(i, 0), fac.g[0]);
    if (!verify_factorization(m, fac))
        throw internal_error("row-gcd factorization failed verification");

    // undo the corner conjugation: P = J·M·J, so f <- J·f and g <- g·J
    Rank1Factorization out;
    out.f.assign(n, MultiPoly(ring, p.vars()));
    out.g.assign(n, MultiPoly(ring, p.vars()));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            out.f[i] = poly_add(out.f[i], poly_mul(corner.j.at(i, k), fac.f[k]));
            out.g[i] = poly_add(out.g[i], poly_mul(fac.g[k], corner.j.at(k, i)));
        }
    if (!verify_factorization(p, out))
        throw internal_error("factorization broke while undoing the conjugation");
    return out;
}

SquareMatrix matrix_component(const SquareMatrix& p, size_t i) {
    SquareMatrix out(p.coeff_ring()->factors[i], p.vars(), p.n());
    for (size_t r = 0; r < p.n(); ++r)
        for (size_t c = 0; c < p.n(); ++c) out.set(r, c, poly_component(p.at(r, c), i));
    return out;
}

void normalize_at_zero(Rank1Factorization& fac, const SquareMatrix& p) {
    if (fac.f.empty()) return;
    const RingPtr& ring = p.coeff_ring();
    if (!mat_eq(mat_eval_at_zero(p),
                SquareMatrix::standard_projection(ring, p.vars(), p.n(), 1)))
        return;
    RingValue u = poly_eval_at_zero(fac.f[0]);
    auto uinv = ring_try_invert(u);
    if (!uinv) throw internal_error("f1(0) is not a unit although P(0) = I_{n,1}");
    for (auto& fi : fac.f) fi = poly_scalar_mul(*uinv, fi);
    for (auto& gj : fac.g) gj = poly_scalar_mul(u, gj);
}

}  // namespace

Rank1Factorization factor_rank1_gcd(const Rank1Certificate& cert) {
    const SquareMatrix& p = cert.matrix;
    const RingPtr& ring = p.coeff_ring();
    require_family(ring);
    if (ring->kind == RingKind::Product || ring_is_quotient_zdr(ring))
        return factor_over_zdr(cert).fac;
    return factor_rank1_core(p, /*leaf_mode=*/ring_is_field(ring));
}

ZdrFactorization factor_over_zdr(const Rank1Certificate& cert) {
    const SquareMatrix& p = cert.matrix;
    const RingPtr& ring = p.coeff_ring();
    ZdrFactorization out{Rank1Factorization{}, {}};

    if (ring_is_trivial(ring)) {
        out.fac.f.assign(p.n(), MultiPoly(ring, p.vars()));
        out.fac.g.assign(p.n(), MultiPoly(ring, p.vars()));
        return out;
    }
    if (ring->kind == RingKind::Product) {
        std::vector<Rank1Factorization> comps;
        for (size_t i = 0; i < ring->factors.size(); ++i) {
            SquareMatrix pc = matrix_component(p, i);
            ZdrFactorization sub = factor_over_zdr(certify_rank1(pc));
            for (auto& s : sub.split_trace) out.split_trace.push_back(std::move(s));
            comps.push_back(std::move(sub.fac));
        }
        out.fac.f.reserve(p.n());
        out.fac.g.reserve(p.n());
        for (size_t i = 0; i < p.n(); ++i) {
            std::vector<MultiPoly> fs, gs;
            for (const auto& c : comps) {
                fs.push_back(c.f[i]);
                gs.push_back(c.g[i]);
            }
            out.fac.f.push_back(poly_recombine(ring, p.vars(), fs));
            out.fac.g.push_back(poly_recombine(ring, p.vars(), gs));
        }
    } else if (ring_is_quotient_zdr(ring)) {
        auto [tree, results] = solve_leafwise<Rank1Factorization>(
            ring,
            [&](int leaf, const ComponentTree& t) {
                const RingPtr& lring = t.node(leaf).ring;
                SquareMatrix pl(lring, p.vars(), p.n());
                for (size_t i = 0; i < p.n(); ++i)
                    for (size_t j = 0; j < p.n(); ++j) pl.set(i, j, t.image_poly(p.at(i, j), leaf));
                return factor_rank1_core(pl, /*leaf_mode=*/true);
            },
            &out.split_trace);
        std::map<int, Rank1Factorization> by_leaf;
        for (auto& [id, val] : results) by_leaf.emplace(id, std::move(val));
        for (size_t i = 0; i < p.n(); ++i) {
            std::map<int, MultiPoly> fs, gs;
            for (auto& [id, fac] : by_leaf) {
                fs.emplace(id, fac.f[i]);
                gs.emplace(id, fac.g[i]);
            }
            out.fac.f.push_back(merge_leaf_polys(tree, 0, fs));
            out.fac.g.push_back(merge_leaf_polys(tree, 0, gs));
        }
    } else if (ring_is_field(ring)) {
        out.fac = factor_rank1_core(p, /*leaf_mode=*/true);
    } else {
        throw validation_error("not a zero-dimensional reduced coefficient ring: " + ring->name());
    }

    if (!verify_factorization(p, out.fac))
        throw internal_error("merged factorization failed verification");
    normalize_at_zero(out.fac, p);
    return out;
}

}  // namespace semnorm
