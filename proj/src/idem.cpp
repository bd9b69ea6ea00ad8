#include "semnorm/idem.hpp"

#include <algorithm>

#include "semnorm/polytext.hpp"

namespace semnorm {

Idempotent::Idempotent(RingValue v) : value(std::move(v)) {
    if (!ring_value_eq(ring_mul(value, value), value))
        throw validation_error("value is not idempotent");
}

QuasiInversePair quasi_inverse(const RingValue& a) {
    auto star = ring_try_quasi_inverse(a);
    if (!star)
        throw validation_error("no quasi-inverse in " + a.ring->name() +
                               "; the element must be split first");
    return QuasiInversePair{a, *star, ring_mul(a, *star)};
}

OrthogonalIdempotentSystem OrthogonalIdempotentSystem::checked(std::vector<RingValue> parts) {
    if (parts.empty()) throw validation_error("empty idempotent system");
    RingValue sum = ring_zero(parts[0].ring);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (!ring_value_eq(ring_mul(parts[i], parts[i]), parts[i]))
            throw validation_error("system member is not idempotent");
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (!ring_is_zero(ring_mul(parts[i], parts[j])))
                throw validation_error("system members are not orthogonal");
        sum = ring_add(sum, parts[i]);
    }
    if (!ring_is_one(sum)) throw validation_error("idempotent system does not sum to 1");
    return OrthogonalIdempotentSystem{std::move(parts)};
}

RefinedIdempotents refine_idempotents(const RingPtr& ring, const std::vector<RingValue>& rs) {
    for (const auto& r : rs) {
        if (!ring_eq(r.ring, ring)) throw validation_error("idempotent outside the ring");
        if (!ring_value_eq(ring_mul(r, r), r)) throw validation_error("input is not idempotent");
    }
    std::vector<RingValue> atoms{ring_one(ring)};
    for (const auto& r : rs) {
        std::vector<RingValue> next;
        for (const auto& a : atoms) {
            RingValue with = ring_mul(a, r);
            RingValue without = ring_sub(a, with);
            if (!ring_is_zero(with)) next.push_back(with);
            if (!ring_is_zero(without)) next.push_back(without);
        }
        atoms = std::move(next);
    }
    RefinedIdempotents out{OrthogonalIdempotentSystem::checked(atoms), {}};
    out.covers.resize(rs.size());
    for (size_t i = 0; i < rs.size(); ++i) {
        RingValue sum = ring_zero(ring);
        for (size_t j = 0; j < out.atoms.parts.size(); ++j) {
            if (ring_value_eq(ring_mul(out.atoms.parts[j], rs[i]), out.atoms.parts[j])) {
                out.covers[i].push_back(j);
                sum = ring_add(sum, out.atoms.parts[j]);
            }
        }
        if (!ring_value_eq(sum, rs[i]))
            throw internal_error("refined atoms do not reassemble an input idempotent");
    }
    return out;
}

AnnihilatorSystem annihilator_system(const std::vector<RingValue>& xs) {
    if (xs.empty()) throw validation_error("annihilator_system needs at least one element");
    const RingPtr& ring = xs[0].ring;
    if (!ring_is_pp(ring))
        throw validation_error("annihilator_system needs a pp-ring, have " + ring->name());
    std::vector<RingValue> r(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
        r[i] = ring_sub(ring_one(ring), ring_annihilator_idempotent(xs[i]));
    std::vector<RingValue> t;
    RingValue run = ring_one(ring);
    for (size_t i = 0; i < xs.size(); ++i) {
        RingValue s = ring_sub(ring_one(ring), r[i]);
        t.push_back(ring_mul(run, s));
        run = ring_mul(run, r[i]);
    }
    t.push_back(run);  // t_{n+1} = r_1···r_n
    RingValue x = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) x = ring_add(x, ring_mul(t[i], xs[i]));
    // postcondition: Ann(x) = <t_{n+1}>, i.e. e_x = 1 - t_{n+1}
    RingValue ex = ring_annihilator_idempotent(x);
    if (!ring_value_eq(ex, ring_sub(ring_one(ring), t.back())))
        throw internal_error("annihilator system postcondition failed");
    return AnnihilatorSystem{OrthogonalIdempotentSystem::checked(std::move(t)), std::move(x)};
}

CornerConjugation conjugate_regular_corner(const SquareMatrix& p) {
    const RingPtr& ring = p.coeff_ring();
    std::vector<RingValue> diag;
    // annihilator of a polynomial entry: product of coefficient annihilators
    for (size_t i = 0; i < p.n(); ++i) {
        RingValue prod = ring_one(ring);
        for (const auto& c : poly_coefficients(p.at(i, i))) {
            RingValue ec = ring_annihilator_idempotent(c);
            prod = ring_mul(prod, ring_sub(ring_one(ring), ec));
        }
        // represents x_i = diagonal entry with Ann = <prod>, via the scalar
        // shape: we work with the idempotents only
        diag.push_back(ring_sub(ring_one(ring), prod));  // e_{x_i}
    }
    // t_1 = e_1, t_2 = (1-e_1)e_2, ..., t_{n+1} = prod (1-e_i)
    std::vector<RingValue> t;
    RingValue run = ring_one(ring);
    for (size_t i = 0; i < diag.size(); ++i) {
        t.push_back(ring_mul(run, diag[i]));
        run = ring_mul(run, ring_sub(ring_one(ring), diag[i]));
    }
    if (!ring_is_zero(run))
        throw validation_error("trace is not regular: t_{n+1} != 0");
    SquareMatrix j(ring, p.vars(), p.n());
    // J = t_1·I + sum_{k>=2} t_k·J_k (J_k swaps rows 1 and k)
    for (size_t k = 0; k < p.n(); ++k) {
        const RingValue& tk = t[k];
        if (ring_is_zero(tk)) continue;
        MultiPoly tkp = MultiPoly::constant(ring, p.vars(), tk);
        if (k == 0) {
            for (size_t i = 0; i < p.n(); ++i) j.set(i, i, poly_add(j.at(i, i), tkp));
        } else {
            j.set(0, k, poly_add(j.at(0, k), tkp));
            j.set(k, 0, poly_add(j.at(k, 0), tkp));
            for (size_t i = 0; i < p.n(); ++i)
                if (i != 0 && i != k) j.set(i, i, poly_add(j.at(i, i), tkp));
        }
    }
    SquareMatrix id = SquareMatrix::identity(ring, p.vars(), p.n());
    if (!mat_eq(mat_mul(j, j), id)) throw internal_error("corner conjugation: J^2 != I");
    SquareMatrix conj = mat_mul(mat_mul(j, p), j);
    return CornerConjugation{std::move(j), std::move(conj)};
}

// ---- component trees ----

ComponentTree::ComponentTree(RingPtr root) {
    if (!ring_is_reduced(root)) throw validation_error("component tree needs a reduced root ring");
    Node n;
    n.ring = std::move(root);
    nodes_.push_back(std::move(n));
}

bool ComponentTree::is_leaf(int id) const { return !nodes_[static_cast<size_t>(id)].is_split; }

std::pair<int, int> ComponentTree::split_leaf(int leaf, const RingValue& a) {
    Node& nd = nodes_[static_cast<size_t>(leaf)];
    if (nd.is_split) throw validation_error("node already split");
    if (!ring_eq(a.ring, nd.ring)) throw validation_error("split element not in the leaf ring");
    RingPtr q = ring_reduced_quotient(nd.ring, a);
    RingPtr l = ring_localization(nd.ring, a);
    nd.is_split = true;
    nd.split_at = a;
    int qi = -1, li = -1;
    if (!ring_is_trivial(q)) {
        Node c;
        c.ring = q;
        c.parent = leaf;
        nodes_.push_back(std::move(c));
        qi = static_cast<int>(nodes_.size() - 1);
    }
    if (!ring_is_trivial(l)) {
        Node c;
        c.ring = l;
        c.parent = leaf;
        nodes_.push_back(std::move(c));
        li = static_cast<int>(nodes_.size() - 1);
    }
    nodes_[static_cast<size_t>(leaf)].quotient_child = qi;
    nodes_[static_cast<size_t>(leaf)].local_child = li;
    return {qi, li};
}

std::vector<int> ComponentTree::leaves() const {
    // canonical order: depth-first, quotient child before localization child
    std::vector<int> out;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const Node& nd = nodes_[static_cast<size_t>(id)];
        if (!nd.is_split) {
            out.push_back(id);
            continue;
        }
        if (nd.local_child >= 0) stack.push_back(nd.local_child);
        if (nd.quotient_child >= 0) stack.push_back(nd.quotient_child);
    }
    return out;
}

RingValue split_image(const RingValue& v, const RingPtr& parent, const RingValue& a,
                      const RingPtr& child, bool quotient_side) {
    if (ring_is_trivial(child)) return ring_zero(child);
    if (ring_eq(parent, child)) return v;
    switch (parent->kind) {
        case RingKind::Product: {
            const auto& parts = value_tuple(v);
            const auto& aparts = value_tuple(a);
            std::vector<RingValue> mapped;
            for (size_t i = 0; i < parts.size(); ++i) {
                RingPtr ci = quotient_side ? ring_reduced_quotient(parent->factors[i], aparts[i])
                                           : ring_localization(parent->factors[i], aparts[i]);
                if (ring_is_trivial(ci)) continue;
                mapped.push_back(split_image(parts[i], parent->factors[i], aparts[i], ci,
                                             quotient_side));
            }
            if (mapped.size() == 1) return mapped[0];
            return ring_tuple(child, std::move(mapped));
        }
        case RingKind::ReducedQuotient: {
            if (parent->base->kind == RingKind::Integers)
                return ring_from_int(child, value_int(v));
            // K[t]/m -> K[t]/m' : reduce the payload
            return ring_poly_value(child, value_poly(v));
        }
        default: return ring_transport(v, child);
    }
}

RingValue ComponentTree::image(const RingValue& v, int id) const {
    // path root -> id
    std::vector<int> path;
    for (int cur = id; cur != -1; cur = nodes_[static_cast<size_t>(cur)].parent) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    if (!ring_eq(v.ring, nodes_[0].ring)) throw validation_error("value not in the root ring");
    RingValue cur = v;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const Node& pn = nodes_[static_cast<size_t>(path[i])];
        bool quot = (pn.quotient_child == path[i + 1]);
        cur = split_image(cur, pn.ring, pn.split_at, nodes_[static_cast<size_t>(path[i + 1])].ring,
                          quot);
    }
    return cur;
}

MultiPoly ComponentTree::image_poly(const MultiPoly& p, int id) const {
    const RingPtr& target = nodes_[static_cast<size_t>(id)].ring;
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) {
        RingValue ic = image(c, id);
        if (!ring_is_zero(ic)) terms.emplace(e, ic);
    }
    return MultiPoly::from_terms(target, p.vars(), std::move(terms));
}

ComponentTree adjoin_quasi_inverse(const RingPtr& a_ring, const RingValue& a) {
    ComponentTree tree(a_ring);
    tree.split_leaf(0, a);
    return tree;
}

// ---- localized components ----

namespace {

RingValue embed_into(const RingValue& y, const RingPtr& parent, const RingValue& e) {
    const RingPtr& small = y.ring;
    if (ring_eq(small, parent)) return ring_mul(y, e);
    if (ring_is_trivial(small)) return ring_zero(parent);
    switch (parent->kind) {
        case RingKind::Product: {
            // reinsert zeros in the killed components
            std::vector<RingValue> out;
            const auto& eparts = value_tuple(e);
            std::vector<RingValue> yparts;
            if (small->kind == RingKind::Product)
                yparts = value_tuple(y);
            else
                yparts = {y};
            size_t k = 0;
            for (size_t i = 0; i < parent->factors.size(); ++i) {
                if (ring_is_zero(eparts[i])) {
                    out.push_back(ring_zero(parent->factors[i]));
                } else {
                    if (k >= yparts.size()) throw internal_error("component embed arity mismatch");
                    out.push_back(embed_into(yparts[k++], parent->factors[i], eparts[i]));
                }
            }
            return ring_tuple(parent, std::move(out));
        }
        case RingKind::ReducedQuotient: {
            if (parent->base->kind == RingKind::Integers) {
                const Int& n = value_int(parent->quot_modulus);
                const Int& h = value_int(small->quot_modulus);
                Int g = int_exact_div(n, h);
                return RingValue(parent, int_crt(Int(0), g, value_int(y), h));
            }
            const MultiPoly& m = value_poly(parent->quot_modulus);
            const MultiPoly& h = value_poly(small->quot_modulus);
            MultiPoly g = field_poly_divmod(m, h).quot;
            auto eg = field_poly_ext_gcd(g, h);  // u·g + v·h = 1
            MultiPoly lift = field_poly_divmod(poly_mul(poly_mul(eg.u, g), value_poly(y)), m).rem;
            return ring_poly_value(parent, lift);
        }
        default: throw validation_error("component embedding unsupported for " + parent->name());
    }
}

}  // namespace

LocalizedComponent localize_component(const RingPtr& a_ring, const std::vector<RingValue>& elems) {
    RingValue prod = ring_one(a_ring);
    RingValue e = ring_one(a_ring);
    for (const auto& x : elems) {
        if (!ring_eq(x.ring, a_ring)) throw validation_error("element outside the ring");
        prod = ring_mul(prod, x);
        QuasiInversePair qp = quasi_inverse(x);
        e = ring_mul(e, qp.e);
    }
    RingPtr iso = ring_localization(a_ring, prod);
    LocalizedComponent out;
    out.e = e;
    out.iso_ring = iso;
    RingPtr parent = a_ring;
    RingValue pv = prod;
    out.project = [parent, pv, iso](const RingValue& x) {
        return split_image(x, parent, pv, iso, false);
    };
    RingValue ecopy = e;
    out.embed = [parent, ecopy](const RingValue& y) { return embed_into(y, parent, ecopy); };
    return out;
}

// ---- elimination cascade ----

std::string TrivialityCertificate::to_text(const std::vector<RingValue>& elems) const {
    std::string out;
    for (const auto& prod : zero_products) {
        if (prod.empty()) {
            out += "1 = 0\n";
            continue;
        }
        std::string line;
        for (size_t k = 0; k < prod.size(); ++k)
            line += (k ? " * " : "") + value_to_string(elems[prod[k]]);
        out += line + " = 0\n";
    }
    return out;
}

EliminationOutcome eliminate(const RingPtr& root, const std::vector<RingValue>& elems,
                             const std::function<bool(const std::vector<size_t>&)>& freeness_oracle,
                             const std::function<bool(const RingValue&)>& zero_check) {
    size_t r = elems.size();
    for (const auto& x : elems)
        if (!ring_eq(x.ring, root)) throw validation_error("splitting element outside the root ring");
    if (r > 20) throw resource_error("too many splitting elements for the component cascade");
    EliminationOutcome out;
    std::vector<std::vector<size_t>> zeroed;
    auto killed = [&](const std::vector<size_t>& subset) {
        for (const auto& z : zeroed) {
            if (std::includes(subset.begin(), subset.end(), z.begin(), z.end())) return true;
        }
        return false;
    };
    // all subsets of {0..r-1}, decreasing size, lexicographic within a size
    for (size_t sz = r + 1; sz-- > 0;) {
        std::vector<std::vector<size_t>> level;
        if (sz == 0) {
            level.push_back({});
        } else {
            std::vector<size_t> idx(sz);
            for (size_t i = 0; i < sz; ++i) idx[i] = i;
            while (true) {
                level.push_back(idx);
                bool advanced = false;
                for (size_t i = sz; i-- > 0;) {
                    if (idx[i] < r - sz + i) {
                        ++idx[i];
                        for (size_t j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) break;
            }
        }
        for (const auto& subset : level) {
            if (killed(subset)) continue;
            if (freeness_oracle(subset)) {
                if (zero_check) {
                    RingValue prod = ring_one(root);
                    for (size_t i : subset) prod = ring_mul(prod, elems[i]);
                    if (!zero_check(prod))
                        throw internal_error(
                            "freeness oracle inconsistent with ring arithmetic: product not zero");
                }
                out.certificate.zero_products.push_back(subset);
                if (subset.empty()) out.certificate.reached_trivial = true;
                zeroed.push_back(subset);
            } else {
                out.survivors.push_back(subset);
            }
        }
    }
    return out;
}

}  // namespace semnorm
