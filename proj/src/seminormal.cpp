#include "semnorm/seminormal.hpp"

#include <algorithm>
#include <set>

#include "semnorm/linsolve.hpp"
#include "semnorm/polytext.hpp"

namespace semnorm {

namespace {

unsigned ambient_degree(const RingValue& v) {
    unsigned d = 0;
    for (const auto& [e, c] : value_flat_terms(v)) d = std::max(d, exps_total(e));
    return d;
}

// deterministic ordering for generator/candidate lists
bool value_order(const RingValue& a, const RingValue& b) {
    unsigned da = ambient_degree(a), db = ambient_degree(b);
    if (da != db) return da < db;
    return value_to_string(a) < value_to_string(b);
}

std::vector<RingValue> dedup_sorted(std::vector<RingValue> xs) {
    std::sort(xs.begin(), xs.end(), value_order);
    std::vector<RingValue> out;
    for (auto& x : xs) {
        if (ring_is_zero(x)) continue;
        if (!out.empty() && ring_value_eq(out.back(), x)) continue;
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

SeminormalWitnessRequest::SeminormalWitnessRequest(RingValue b_in, RingValue c_in)
    : b(std::move(b_in)), c(std::move(c_in)) {
    if (!ring_eq(b.ring, c.ring)) throw validation_error("witness request needs one ring");
    RingValue b2 = ring_mul(b, b);
    RingValue c3 = ring_mul(ring_mul(c, c), c);
    if (!ring_value_eq(b2, c3)) throw validation_error("witness request requires b^2 = c^3");
}

std::optional<RingValue> seminormal_witness(const SeminormalWitnessRequest& req) {
    const RingPtr& r = req.b.ring;
    if (!ring_is_reduced(r)) throw validation_error("seminormal witness needs a reduced ring");
    auto verify = [&](const RingValue& a) {
        return ring_value_eq(ring_mul(a, a), req.c) &&
               ring_value_eq(ring_mul(ring_mul(a, a), a), req.b);
    };
    std::optional<RingValue> candidate;
    if (ring_is_zdr(r)) {
        auto cstar = ring_try_quasi_inverse(req.c);
        if (!cstar) return std::nullopt;
        candidate = ring_mul(req.b, *cstar);
    } else if (r->kind == RingKind::SemigroupSubring) {
        RingPtr ambient = driver_ambient(r);
        RingValue b_amb = ring_transport(req.b, ambient);
        RingValue c_amb = ring_transport(req.c, ambient);
        if (ring_is_zero(c_amb)) {
            candidate = ring_zero(r);
        } else {
            auto a_amb = ring_try_exact_div(b_amb, c_amb);
            if (!a_amb) return std::nullopt;
            if (!ring_membership(*a_amb, r)) return std::nullopt;
            candidate = ring_transport(*a_amb, r);
        }
    } else if (ring_is_domain(r)) {
        if (ring_is_zero(req.c)) {
            candidate = ring_zero(r);
        } else {
            auto a = ring_try_exact_div(req.b, req.c);
            if (!a) return std::nullopt;
            candidate = *a;
        }
    } else {
        throw validation_error("no witness resolution for ring " + r->name());
    }
    if (candidate && verify(*candidate)) return candidate;
    return std::nullopt;
}

RingPtr driver_ambient(const RingPtr& a_ring) {
    if (a_ring->kind == RingKind::SemigroupSubring)
        return ring_univariate(a_ring->base, a_ring->vars[0]);
    if (ring_is_gcd_family(a_ring)) return a_ring;
    throw validation_error("no effective ambient for ring " + a_ring->name());
}

// ---- stage membership ----

namespace {

// basis monomials of the base ring inside the ambient, up to degree bound
std::vector<RingValue> base_basis(const RingPtr& base, const RingPtr& ambient, unsigned maxdeg) {
    std::vector<RingValue> out;
    if (base->kind == RingKind::SemigroupSubring) {
        for (unsigned s = 0; s <= maxdeg; ++s) {
            if (!semigroup_contains(base->semigroup, s)) continue;
            MultiPoly mono = MultiPoly::variable(base->base, base->vars, 0, s);
            out.push_back(RingValue(ambient, std::make_shared<const MultiPoly>(mono)));
        }
        return out;
    }
    if (ring_eq(base, ambient) && ambient->kind == RingKind::Univariate) {
        for (unsigned s = 0; s <= maxdeg; ++s) {
            MultiPoly mono = MultiPoly::variable(ambient->base, ambient->vars, 0, s);
            out.push_back(RingValue(ambient, std::make_shared<const MultiPoly>(mono)));
        }
        return out;
    }
    throw validation_error("no stage basis for base " + base->name());
}

// monomials (as ambient values) in the given elements with exponent sum <= cap
// and ambient degree <= maxdeg
std::vector<RingValue> element_monomials(const RingPtr& ambient, const std::vector<RingValue>& gens,
                                         unsigned count_cap, unsigned maxdeg,
                                         bool include_one = true) {
    std::vector<RingValue> out;
    std::vector<RingValue> frontier{ring_one(ambient)};
    if (include_one) out.push_back(ring_one(ambient));
    for (unsigned c = 1; c <= count_cap; ++c) {
        std::vector<RingValue> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                RingValue prod = ring_mul(m, g);
                if (ambient_degree(prod) > maxdeg) continue;
                next.push_back(prod);
            }
        }
        next = dedup_sorted(next);
        for (const auto& m : next) out.push_back(m);
        frontier = next;
        if (frontier.empty()) break;
    }
    return dedup_sorted(out);
}

}  // namespace

bool tower_contains(const AdjunctionTower& tower, size_t upto, const RingValue& x_ambient) {
    RingValue x = ring_eq(x_ambient.ring, tower.ambient)
                      ? x_ambient
                      : ring_transport(x_ambient, tower.ambient);
    if (ring_membership(x, tower.base)) return true;
    if (upto == 0) return false;
    unsigned dx = ambient_degree(x);
    std::vector<RingValue> steps(tower.steps.begin(),
                                 tower.steps.begin() + static_cast<long>(upto));
    std::vector<RingValue> monos =
        element_monomials(tower.ambient, steps, tower.degree_cap, dx);
    CoordSpace space(ring_scalar(tower.ambient));
    SpanSolver solver(space.field());
    size_t col = 0;
    for (const auto& mu : monos) {
        unsigned dm = ambient_degree(mu);
        if (dm > dx) continue;
        for (const auto& ba : base_basis(tower.base, tower.ambient, dx - dm)) {
            RingValue prod = ring_mul(ba, mu);
            if (ambient_degree(prod) > dx) continue;
            solver.add_vector(col++, space.coords(prod));
        }
    }
    return solver.contains(space.coords(x));
}

// ---- Kronecker integrality ----

bool certificate_holds(const MonicCertificate& cert) {
    const RingPtr& r = cert.element.ring;
    RingValue acc = ring_pow(cert.element, cert.degree());
    for (unsigned j = 0; j < cert.degree(); ++j)
        acc = ring_add(acc, ring_mul(cert.coeffs[j], ring_pow(cert.element, j)));
    return ring_is_zero(acc);
}

namespace {

MonicCertificate find_certificate(const RingValue& z, const std::vector<RingValue>& span_gens,
                                  unsigned degree_cap) {
    const RingPtr& ambient = z.ring;
    CoordSpace space(ring_scalar(ambient));
    SpanSolver solver(space.field());
    // columns are z^j · (monomial in span_gens of count <= d - j); they are
    // added incrementally as d grows
    struct Column {
        unsigned j;
        RingValue value;  // the ambient product z^j · mu
        RingValue mu;
    };
    std::vector<Column> columns;
    std::vector<RingValue> zpow{ring_one(ambient)};
    auto ensure_zpow = [&](unsigned j) {
        while (zpow.size() <= j) zpow.push_back(ring_mul(zpow.back(), z));
    };
    std::vector<std::vector<RingValue>> monos_by_count{{ring_one(ambient)}};
    auto ensure_monos = [&](unsigned c) {
        while (monos_by_count.size() <= c) {
            std::vector<RingValue> next;
            for (const auto& m : monos_by_count.back())
                for (const auto& g : span_gens) next.push_back(ring_mul(m, g));
            monos_by_count.push_back(dedup_sorted(next));
        }
    };
    for (unsigned d = 1; d <= degree_cap; ++d) {
        // cumulative column set after round d: z^j·mu with count(mu) <= d - j.
        // Each round contributes the pairs with j + count = d, plus the bare
        // power z^(d-1).
        for (unsigned j = 0; j < d; ++j) {
            unsigned c = d - j;
            ensure_zpow(j);
            ensure_monos(c);
            for (const auto& mu : monos_by_count[c]) {
                RingValue val = ring_mul(zpow[j], mu);
                columns.push_back(Column{j, val, mu});
                solver.add_vector(columns.size() - 1, space.coords(val));
            }
        }
        ensure_zpow(d - 1);
        columns.push_back(Column{d - 1, zpow[d - 1], ring_one(ambient)});
        solver.add_vector(columns.size() - 1, space.coords(zpow[d - 1]));

        ensure_zpow(d);
        auto combo = solver.express(space.coords(zpow[d]));
        if (!combo) continue;
        MonicCertificate cert;
        cert.element = z;
        cert.coeffs.assign(d, ring_zero(ambient));
        for (const auto& [cid, q] : *combo) {
            const Column& col = columns[cid];
            // z^d = sum q·z^j·mu, so the monic coefficient at z^j collects -q·mu
            RingValue q_amb = ring_transport(q, ambient);
            cert.coeffs[col.j] = ring_sub(cert.coeffs[col.j], ring_mul(q_amb, col.mu));
        }
        if (!certificate_holds(cert))
            throw internal_error("integrality certificate failed the substitution check");
        return cert;
    }
    throw resource_error("integrality certificate search exhausted the degree cap");
}

}  // namespace

KroneckerReport kronecker_check_with(const MultiPoly& f_in, const MultiPoly& g_in,
                                     const std::vector<RingValue>& extra_gens,
                                     unsigned degree_cap) {
    MultiPoly f = f_in, g = g_in;
    if (f.vars().size() > 1) {
        MultiPoly h0 = poly_mul(f, g);
        unsigned m = kronecker_min_m({f, g, h0});
        f = kronecker_substitute(f, m);
        g = kronecker_substitute(g, m);
    }
    MultiPoly h = poly_mul(f, g);
    std::vector<RingValue> span_gens = poly_coefficients(h);
    for (const auto& x : extra_gens) span_gens.push_back(x);
    span_gens = dedup_sorted(span_gens);

    KroneckerReport report;
    std::vector<RingValue> seen;
    for (const auto& a : poly_coefficients(f)) {
        for (const auto& b : poly_coefficients(g)) {
            RingValue z = ring_mul(a, b);
            bool dup = false;
            for (const auto& s : seen)
                if (ring_value_eq(s, z)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            seen.push_back(z);
            MonicCertificate cert = find_certificate(z, span_gens, degree_cap);
            report.max_degree = std::max(report.max_degree, cert.degree());
            report.certificates.push_back(std::move(cert));
        }
    }
    return report;
}

KroneckerReport kronecker_check(const MultiPoly& f, const MultiPoly& g, unsigned degree_cap) {
    return kronecker_check_with(f, g, {}, degree_cap);
}

// ---- conductor ----

ConductorIdeal conductor(const AdjunctionTower& stage, const std::vector<RingValue>& extension_gens,
                         unsigned d, unsigned degree_bound) {
    ConductorIdeal out;
    out.extension_gens = extension_gens;
    unsigned q = static_cast<unsigned>(extension_gens.size());
    out.exponent_n = (d > 0 ? d - 1 : 0) * q;
    unsigned maxgen = 0;
    for (const auto& c : extension_gens) maxgen = std::max(maxgen, ambient_degree(c));
    unsigned bound = degree_bound ? degree_bound : 4 * std::max(1u, d) * std::max(1u, q) + maxgen;

    // stage basis candidates in canonical order
    std::vector<RingValue> monos =
        element_monomials(stage.ambient, stage.steps, stage.degree_cap, bound);
    std::vector<RingValue> candidates;
    for (const auto& mu : monos) {
        unsigned dm = ambient_degree(mu);
        if (dm > bound) continue;
        for (const auto& ba : base_basis(stage.base, stage.ambient, bound - dm))
            candidates.push_back(ring_mul(ba, mu));
    }
    candidates = dedup_sorted(candidates);

    CoordSpace space(ring_scalar(stage.ambient));
    SpanSolver ideal_span(space.field());
    size_t col = 0;
    auto add_ideal_gen = [&](const RingValue& g) {
        unsigned dg = ambient_degree(g);
        for (const auto& mu : monos) {
            unsigned dm = ambient_degree(mu);
            if (dg + dm > bound) continue;
            for (const auto& ba : base_basis(stage.base, stage.ambient, bound - dg - dm)) {
                RingValue prod = ring_mul(ring_mul(g, ba), mu);
                ideal_span.add_vector(col++, space.coords(prod));
            }
        }
    };

    for (const auto& x : candidates) {
        bool in_conductor = true;
        for (const auto& c : extension_gens) {
            if (!tower_contains(stage, stage.steps.size(), ring_mul(x, c))) {
                in_conductor = false;
                break;
            }
        }
        if (!in_conductor) continue;
        if (ring_try_invert(x)) {
            out.generators = {ring_one(stage.ambient)};
            out.is_unit_ideal = true;
            return out;
        }
        if (ideal_span.contains(space.coords(x))) continue;  // already generated
        out.generators.push_back(x);
        add_ideal_gen(x);
    }
    return out;
}

// ---- closure tower and the driver ----

namespace {

MultiPoly transport_poly(const MultiPoly& p, const RingPtr& target) {
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) terms.emplace(e, ring_transport(c, target));
    return MultiPoly::from_terms(target, p.vars(), std::move(terms));
}

SquareMatrix transport_matrix(const SquareMatrix& m, const RingPtr& target) {
    SquareMatrix out(target, m.vars(), m.n());
    for (size_t i = 0; i < m.n(); ++i)
        for (size_t j = 0; j < m.n(); ++j) out.set(i, j, transport_poly(m.at(i, j), target));
    return out;
}

void require_standard_at_zero(const SquareMatrix& p) {
    if (!mat_eq(mat_eval_at_zero(p),
                SquareMatrix::standard_projection(p.coeff_ring(), p.vars(), p.n(), 1)))
        throw validation_error("the driver requires P(0) = I_{n,1}");
}

}  // namespace

ClosureOutcome closure_tower(const RingPtr& a_ring, const Rank1Certificate& cert) {
    const SquareMatrix& p = cert.matrix;
    require_standard_at_zero(p);
    ClosureOutcome out;
    out.tower.base = a_ring;
    out.tower.ambient = driver_ambient(a_ring);

    if (ring_is_gcd_family(a_ring)) {
        out.fac = factor_rank1_gcd(cert);
        // unit-normalize at zero: f1(0)·g1(0) = 1 makes f1(0) a unit
        RingValue u = poly_eval_at_zero(out.fac.f[0]);
        auto uinv = ring_try_invert(u);
        if (uinv) {
            for (auto& fi : out.fac.f) fi = poly_scalar_mul(*uinv, fi);
            for (auto& gj : out.fac.g) gj = poly_scalar_mul(u, gj);
        }
        out.trace.push_back("gcd-family base: direct row-gcd factorization, empty tower");
        return out;
    }

    const RingPtr& ambient = out.tower.ambient;
    RingPtr frac = ring_fraction_field(ambient);

    // 1. factor over the zero-dimensional closure of the ambient
    SquareMatrix p_frac = transport_matrix(p, frac);
    ZdrFactorization zdr = factor_over_zdr(certify_rank1(p_frac));
    for (auto& s : zdr.split_trace) out.trace.push_back(std::move(s));

    // 2. the coefficients land in the ambient (it is integrally closed in its
    // fraction field); collect the finite extension B = A[coefficients]
    Rank1Factorization fac_amb;
    for (const auto& fi : zdr.fac.f) fac_amb.f.push_back(transport_poly(fi, ambient));
    for (const auto& gj : zdr.fac.g) fac_amb.g.push_back(transport_poly(gj, ambient));
    out.fac = fac_amb;

    std::vector<RingValue> coeffs;
    for (const auto& fi : fac_amb.f)
        for (const auto& c : poly_coefficients(fi)) coeffs.push_back(c);
    for (const auto& gj : fac_amb.g)
        for (const auto& c : poly_coefficients(gj)) coeffs.push_back(c);
    std::vector<RingValue> ext;
    for (const auto& c : coeffs) {
        auto [u, canon] = ring_unit_normalize(c);
        if (!ring_membership(canon, a_ring)) ext.push_back(canon);
    }
    ext = dedup_sorted(ext);
    if (ext.empty()) {
        out.trace.push_back("all factor coefficients already in the base ring: empty tower");
        return out;
    }

    // 3. integrality certificates give the module degree bound d
    unsigned d = 1;
    {
        std::vector<RingValue> subring_gens;
        for (size_t j = 0; j < p.n(); ++j)
            for (const auto& c : poly_coefficients(transport_poly(p.at(0, j), ambient)))
                subring_gens.push_back(c);
        for (size_t i = 0; i < p.n(); ++i)
            for (const auto& c : poly_coefficients(transport_poly(p.at(i, 0), ambient)))
                subring_gens.push_back(c);
        subring_gens = dedup_sorted(subring_gens);
        for (size_t j = 0; j < fac_amb.g.size(); ++j) {
            KroneckerReport rep =
                kronecker_check_with(fac_amb.f[0], fac_amb.g[j], subring_gens, 16);
            d = std::max(d, rep.max_degree);
        }
        for (size_t i = 1; i < fac_amb.f.size(); ++i) {
            KroneckerReport rep =
                kronecker_check_with(fac_amb.f[i], fac_amb.g[0], subring_gens, 16);
            d = std::max(d, rep.max_degree);
        }
        out.trace.push_back("integral dependence degree bound d = " + std::to_string(d));
    }
    unsigned q = static_cast<unsigned>(ext.size());
    out.tower.degree_cap = 4 * d * q;

    // 4. saturate the seminormal closure of A in B
    unsigned pool_degree = 4 * d * q;
    unsigned maxgen = 0;
    for (const auto& c : ext) maxgen = std::max(maxgen, ambient_degree(c));
    std::vector<RingValue> pool =
        element_monomials(ambient, ext, 4 * d * q, pool_degree * std::max(1u, maxgen), false);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& x : pool) {
            if (tower_contains(out.tower, out.tower.steps.size(), x)) continue;
            RingValue x2 = ring_mul(x, x);
            RingValue x3 = ring_mul(x2, x);
            if (!tower_contains(out.tower, out.tower.steps.size(), x2)) continue;
            if (!tower_contains(out.tower, out.tower.steps.size(), x3)) continue;
            out.tower.steps.push_back(x);
            out.trace.push_back("adjoined " + value_to_string(x) +
                                " (square and cube in the stage below)");
            grew = true;
            break;
        }
    }

    // 5. the stage must now swallow B; the conductor of the stage in B is the
    // unit ideal exactly then
    for (const auto& c : ext) {
        if (!tower_contains(out.tower, out.tower.steps.size(), c))
            throw resource_error(
                "closure saturation stalled below the extension (degree caps too small)");
    }
    ConductorIdeal cond = conductor(out.tower, ext, d);
    if (!cond.is_unit_ideal)
        throw internal_error("stage swallowed the extension but the conductor is not <1>");
    out.trace.push_back("conductor of the stage in the extension is <1>: tower complete");
    return out;
}

FactorizationResult factor_rank1_seminormal(const RingPtr& a_ring, const Rank1Certificate& cert) {
    require_standard_at_zero(cert.matrix);
    ClosureOutcome closure = closure_tower(a_ring, cert);
    FactorizationResult result;
    result.trace = std::move(closure.trace);

    // witness collapse: a step whose square and cube already have a root in
    // the stage below is redundant (the root equals the step by uniqueness)
    AdjunctionTower tower = closure.tower;
    bool collapsed = true;
    while (collapsed && !tower.steps.empty()) {
        collapsed = false;
        for (size_t i = tower.steps.size(); i-- > 0;) {
            AdjunctionTower lower = tower;
            lower.steps.erase(lower.steps.begin() + static_cast<long>(i));
            if (tower_contains(lower, i, tower.steps[i])) {
                result.trace.push_back("collapsed the redundant step " +
                                       value_to_string(tower.steps[i]));
                tower = lower;
                collapsed = true;
                break;
            }
        }
    }
    for (const auto& ci : tower.steps)
        result.trace.push_back("witness absent for " + value_to_string(ci) +
                               ": square and cube are in the stage below, the root is not");

    result.tower = tower;
    result.fac = closure.fac;
    if (tower.steps.empty()) {
        result.factored = true;
        if (!ring_is_gcd_family(a_ring)) {
            // pull every coefficient into A (membership checked on transport)
            Rank1Factorization over_a;
            for (const auto& fi : result.fac.f) over_a.f.push_back(transport_poly(fi, a_ring));
            for (const auto& gj : result.fac.g) over_a.g.push_back(transport_poly(gj, a_ring));
            result.fac = std::move(over_a);
        }
    } else {
        result.factored = false;
        // minimality of the obstruction: dropping the last step must lose a
        // factor coefficient
        AdjunctionTower without_last = tower;
        without_last.steps.pop_back();
        bool last_needed = false;
        for (const auto& part : {result.fac.f, result.fac.g}) {
            for (const auto& poly : part)
                for (const auto& c : poly_coefficients(poly))
                    if (!tower_contains(without_last, without_last.steps.size(), c)) {
                        last_needed = true;
                        break;
                    }
        }
        if (!last_needed)
            throw internal_error("obstruction tower is not minimal: last step unused");
    }
    return result;
}

}  // namespace semnorm
