#include "semnorm/matrix.hpp"

#include <map>

#include "semnorm/polytext.hpp"

namespace semnorm {

SquareMatrix::SquareMatrix(RingPtr coeff_ring, std::vector<std::string> vars, size_t n)
    : coeff_ring_(std::move(coeff_ring)), vars_(std::move(vars)), n_(n) {
    entries_.assign(n_ * n_, MultiPoly(coeff_ring_, vars_));
}

SquareMatrix SquareMatrix::identity(RingPtr coeff_ring, std::vector<std::string> vars, size_t n) {
    SquareMatrix m(coeff_ring, vars, n);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i, MultiPoly::constant(coeff_ring, m.vars(), ring_one(coeff_ring)));
    return m;
}

SquareMatrix SquareMatrix::standard_projection(RingPtr coeff_ring, std::vector<std::string> vars,
                                               size_t n, size_t r) {
    if (r > n) throw validation_error("standard projection rank exceeds dimension");
    SquareMatrix m(coeff_ring, vars, n);
    for (size_t i = 0; i < r; ++i)
        m.set(i, i, MultiPoly::constant(coeff_ring, m.vars(), ring_one(coeff_ring)));
    return m;
}

SquareMatrix SquareMatrix::from_entries(RingPtr coeff_ring, std::vector<std::string> vars,
                                        std::vector<std::vector<MultiPoly>> rows) {
    size_t n = rows.size();
    SquareMatrix m(std::move(coeff_ring), std::move(vars), n);
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw validation_error("matrix is not square");
        for (size_t j = 0; j < n; ++j) m.set(i, j, std::move(rows[i][j]));
    }
    return m;
}

void SquareMatrix::set(size_t i, size_t j, MultiPoly p) {
    if (!ring_eq(p.coeff_ring(), coeff_ring_) || p.vars() != vars_)
        throw validation_error("matrix entry ring/vars mismatch");
    entries_[i * n_ + j] = std::move(p);
}

namespace {
void check_same_shape(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n() || !ring_eq(a.coeff_ring(), b.coeff_ring()) || a.vars() != b.vars())
        throw validation_error("matrix shape mismatch");
}
}  // namespace

SquareMatrix mat_add(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_shape(a, b);
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j) out.set(i, j, poly_add(a.at(i, j), b.at(i, j)));
    return out;
}

SquareMatrix mat_sub(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_shape(a, b);
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j) out.set(i, j, poly_sub(a.at(i, j), b.at(i, j)));
    return out;
}

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_shape(a, b);
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j) {
            MultiPoly s(a.coeff_ring(), a.vars());
            for (size_t k = 0; k < a.n(); ++k) s = poly_add(s, poly_mul(a.at(i, k), b.at(k, j)));
            out.set(i, j, std::move(s));
        }
    return out;
}

SquareMatrix mat_scalar_mul(const RingValue& c, const SquareMatrix& a) {
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j) out.set(i, j, poly_scalar_mul(c, a.at(i, j)));
    return out;
}

SquareMatrix mat_transpose(const SquareMatrix& a) {
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j) out.set(i, j, a.at(j, i));
    return out;
}

bool mat_eq(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n() != b.n() || !ring_eq(a.coeff_ring(), b.coeff_ring()) || a.vars() != b.vars())
        return false;
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j)
            if (!poly_eq(a.at(i, j), b.at(i, j))) return false;
    return true;
}

SquareMatrix mat_eval_at_zero(const SquareMatrix& a) {
    SquareMatrix out(a.coeff_ring(), a.vars(), a.n());
    for (size_t i = 0; i < a.n(); ++i)
        for (size_t j = 0; j < a.n(); ++j)
            out.set(i, j, MultiPoly::constant(a.coeff_ring(), a.vars(),
                                              poly_eval_at_zero(a.at(i, j))));
    return out;
}

MultiPoly mat_trace(const SquareMatrix& a) {
    MultiPoly s(a.coeff_ring(), a.vars());
    for (size_t i = 0; i < a.n(); ++i) s = poly_add(s, a.at(i, i));
    return s;
}

namespace {

MultiPoly det_minor(const SquareMatrix& a, size_t row, uint64_t colmask,
                    std::map<uint64_t, MultiPoly>& memo) {
    if (colmask == 0) return MultiPoly::constant(a.coeff_ring(), a.vars(), ring_one(a.coeff_ring()));
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    MultiPoly acc(a.coeff_ring(), a.vars());
    bool plus = true;
    for (size_t j = 0; j < a.n(); ++j) {
        if (!(colmask & (uint64_t(1) << j))) continue;
        MultiPoly sub = det_minor(a, row + 1, colmask & ~(uint64_t(1) << j), memo);
        MultiPoly term = poly_mul(a.at(row, j), sub);
        acc = plus ? poly_add(acc, term) : poly_sub(acc, term);
        plus = !plus;
    }
    memo.emplace(colmask, acc);
    return acc;
}

}  // namespace

MultiPoly mat_det(const SquareMatrix& a) {
    if (a.n() > 20) throw resource_error("determinant dimension too large");
    std::map<uint64_t, MultiPoly> memo;
    uint64_t full = (a.n() == 64) ? ~uint64_t(0) : ((uint64_t(1) << a.n()) - 1);
    return det_minor(a, 0, full, memo);
}

bool check_idempotent(const SquareMatrix& p) { return mat_eq(mat_mul(p, p), p); }

Rank1Certificate certify_rank1(const SquareMatrix& p) {
    MultiPoly tr = mat_trace(p);
    MultiPoly one = MultiPoly::constant(p.coeff_ring(), p.vars(), ring_one(p.coeff_ring()));
    if (!poly_eq(tr, one))
        throw rank1_error("rank-1 certification failed: trace = " + poly_to_string(tr));
    size_t checked = 0;
    for (size_t i = 0; i < p.n(); ++i)
        for (size_t k = i + 1; k < p.n(); ++k)
            for (size_t j = 0; j < p.n(); ++j)
                for (size_t l = j + 1; l < p.n(); ++l) {
                    MultiPoly minor = poly_sub(poly_mul(p.at(i, j), p.at(k, l)),
                                               poly_mul(p.at(i, l), p.at(k, j)));
                    ++checked;
                    if (!minor.is_zero())
                        throw rank1_error("rank-1 certification failed: minor (" +
                                          std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                          ";" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                          ") = " + poly_to_string(minor));
                }
    // trace 1 and vanishing minors force idempotency; check it directly too
    if (!check_idempotent(p)) throw rank1_error("rank-1 certification failed: not idempotent");
    return Rank1Certificate{p, tr, checked};
}

MultiPoly rank_polynomial(const SquareMatrix& p, const std::string& fresh_var) {
    if (!check_idempotent(p)) throw validation_error("rank polynomial needs an idempotent matrix");
    std::vector<std::string> vars = p.vars();
    vars.push_back(fresh_var);
    // rebuild entries over the extended variable list
    SquareMatrix m(p.coeff_ring(), vars, p.n());
    MultiPoly x = MultiPoly::variable(p.coeff_ring(), vars, vars.size() - 1);
    for (size_t i = 0; i < p.n(); ++i)
        for (size_t j = 0; j < p.n(); ++j) {
            MultiPoly::TermMap terms;
            for (const auto& [e, c] : p.at(i, j).terms()) {
                Exps e2 = e;
                e2.push_back(0);
                terms.emplace(std::move(e2), c);
            }
            MultiPoly lifted = MultiPoly::from_terms(p.coeff_ring(), vars, std::move(terms));
            // X·P + (I - P)
            MultiPoly entry = poly_mul(x, lifted);
            entry = poly_sub(entry, lifted);
            if (i == j)
                entry = poly_add(entry, MultiPoly::constant(p.coeff_ring(), vars,
                                                            ring_one(p.coeff_ring())));
            m.set(i, j, std::move(entry));
        }
    MultiPoly det = mat_det(m);
    // drop the original variables from the exponent vectors (they cannot occur:
    // det(XP + I - P) has coefficients that are idempotent combinations, but a
    // polynomial matrix keeps them; keep whole support in the fresh variable
    // only when the input was constant)
    return det;
}

std::optional<unsigned> constant_rank(const SquareMatrix& p) {
    MultiPoly r = rank_polynomial(p);
    if (r.term_count() != 1) return std::nullopt;
    const auto& [e, c] = *r.terms().begin();
    if (!ring_is_one(c)) return std::nullopt;
    return e.back();
}

bool verify_factorization(const SquareMatrix& p, const Rank1Factorization& fac) {
    if (fac.f.size() != p.n() || fac.g.size() != p.n()) return false;
    MultiPoly dot(p.coeff_ring(), p.vars());
    for (size_t i = 0; i < p.n(); ++i) dot = poly_add(dot, poly_mul(fac.g[i], fac.f[i]));
    MultiPoly one = MultiPoly::constant(p.coeff_ring(), p.vars(), ring_one(p.coeff_ring()));
    if (!poly_eq(dot, one)) return false;
    for (size_t i = 0; i < p.n(); ++i)
        for (size_t j = 0; j < p.n(); ++j)
            if (!poly_eq(poly_mul(fac.f[i], fac.g[j]), p.at(i, j))) return false;
    return true;
}

RingValue unit_between(const Rank1Factorization& fac1, const Rank1Factorization& fac2) {
    if (fac1.f.empty() || fac1.f.size() != fac2.f.size())
        throw validation_error("factorization size mismatch");
    const RingPtr& ring = fac1.f[0].coeff_ring();
    if (!ring_is_reduced(ring))
        throw validation_error("unit_between requires a reduced coefficient ring");
    for (size_t i = 0; i < fac1.f.size(); ++i) {
        if (fac1.f[i].is_zero()) continue;
        auto q = poly_try_exact_div(fac2.f[i], fac1.f[i]);
        if (!q || !q->is_constant()) break;
        RingValue u = q->constant_value();
        // confirm on all entries
        bool ok = ring_try_invert(u).has_value();
        for (size_t j = 0; ok && j < fac1.f.size(); ++j) {
            ok = poly_eq(fac2.f[j], poly_scalar_mul(u, fac1.f[j])) &&
                 poly_eq(fac1.g[j], poly_scalar_mul(u, fac2.g[j]));
        }
        if (ok) return u;
        break;
    }
    throw validation_error("factorizations are not unit-related");
}

bool verify_free_image(const SquareMatrix& p, const FreeImageWitness& w) {
    size_t n = p.n();
    size_t r = w.rows_y.size();
    if (w.cols_x.size() != n) return false;
    for (const auto& row : w.cols_x)
        if (row.size() != r) return false;
    for (const auto& row : w.rows_y)
        if (row.size() != n) return false;
    const RingPtr& ring = p.coeff_ring();
    // Y·X = I_r
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            MultiPoly s(ring, p.vars());
            for (size_t k = 0; k < n; ++k) s = poly_add(s, poly_mul(w.rows_y[i][k], w.cols_x[k][j]));
            MultiPoly want = (i == j) ? MultiPoly::constant(ring, p.vars(), ring_one(ring))
                                      : MultiPoly(ring, p.vars());
            if (!poly_eq(s, want)) return false;
        }
    // X·Y = P
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            MultiPoly s(ring, p.vars());
            for (size_t k = 0; k < r; ++k) s = poly_add(s, poly_mul(w.cols_x[i][k], w.rows_y[k][j]));
            if (!poly_eq(s, p.at(i, j))) return false;
        }
    return true;
}

namespace {

unsigned dual_iterations(unsigned order) {
    unsigned it = 0;
    unsigned reach = 1;
    while (reach < order) {
        reach *= 2;
        ++it;
    }
    return it == 0 ? 1 : it;
}

bool entries_nilpotent(const SquareMatrix& m) {
    for (size_t i = 0; i < m.n(); ++i)
        for (size_t j = 0; j < m.n(); ++j)
            for (const auto& [e, c] : m.at(i, j).terms()) {
                const MultiPoly& payload = value_poly(c);
                if (!ring_is_zero(payload.constant_value())) return false;
            }
    return true;
}

}  // namespace

SquareMatrix newton_lift(const SquareMatrix& p) {
    const RingPtr& ring = p.coeff_ring();
    if (ring->kind != RingKind::DualNumbers)
        throw validation_error("newton lift expects a dual-numbers coefficient ring");
    SquareMatrix defect = mat_sub(mat_mul(p, p), p);
    if (!entries_nilpotent(defect))
        throw validation_error("newton lift: P^2 - P is not nilpotent-valued");
    unsigned iters = dual_iterations(ring->dual_order);
    SquareMatrix q = p;
    RingValue three = ring_from_int(ring, 3);
    RingValue two = ring_from_int(ring, 2);
    for (unsigned i = 0; i < iters; ++i) {
        SquareMatrix q2 = mat_mul(q, q);
        SquareMatrix q3 = mat_mul(q2, q);
        q = mat_sub(mat_scalar_mul(three, q2), mat_scalar_mul(two, q3));
    }
    return q;
}

Conjugation lift_conjugation(const SquareMatrix& p, const SquareMatrix& q) {
    check_same_shape(p, q);
    const RingPtr& ring = p.coeff_ring();
    if (ring->kind != RingKind::DualNumbers)
        throw validation_error("conjugation lift expects a dual-numbers coefficient ring");
    if (!check_idempotent(p) || !check_idempotent(q))
        throw validation_error("conjugation lift expects idempotent matrices");
    SquareMatrix diff = mat_sub(p, q);
    if (!entries_nilpotent(diff))
        throw validation_error("conjugation lift: residues modulo the nilpotents differ");
    SquareMatrix id = SquareMatrix::identity(ring, p.vars(), p.n());
    SquareMatrix m = mat_add(mat_mul(q, p), mat_mul(mat_sub(id, q), mat_sub(id, p)));
    // m = I - n with nilpotent-valued n; invert by the geometric series
    SquareMatrix nil = mat_sub(id, m);
    SquareMatrix inv = id;
    SquareMatrix power = id;
    for (unsigned i = 1; i < 2 * ring->dual_order; ++i) {
        power = mat_mul(power, nil);
        bool all_zero = true;
        for (size_t r = 0; all_zero && r < power.n(); ++r)
            for (size_t c = 0; all_zero && c < power.n(); ++c)
                if (!power.at(r, c).is_zero()) all_zero = false;
        if (all_zero) break;
        inv = mat_add(inv, power);
    }
    if (!mat_eq(mat_mul(m, inv), id)) throw internal_error("conjugation lift: inverse failed");
    return Conjugation{m, inv};
}

SquareMatrix similarity_to_standard(const SquareMatrix& p, const FreeImageWitness& w) {
    if (!verify_free_image(p, w)) throw validation_error("free-image witness fails verification");
    size_t n = p.n();
    size_t r = w.rows_y.size();
    const RingPtr& ring = p.coeff_ring();
    SquareMatrix v(ring, p.vars(), n + r);
    MultiPoly one = MultiPoly::constant(ring, p.vars(), ring_one(ring));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            MultiPoly e = poly_neg(p.at(i, j));
            if (i == j) e = poly_add(e, one);
            v.set(i, j, std::move(e));
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < r; ++j) v.set(i, n + j, w.cols_x[i][j]);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) v.set(n + i, j, w.rows_y[i][j]);
    return v;
}

NormalizedProjection normalize_projection_at_zero(const SquareMatrix& p,
                                                  const std::vector<MultiPoly>& x0,
                                                  const std::vector<MultiPoly>& y0) {
    size_t n = p.n();
    const RingPtr& ring = p.coeff_ring();
    SquareMatrix p0 = mat_eval_at_zero(p);
    FreeImageWitness w;
    w.cols_x.resize(n);
    for (size_t i = 0; i < n; ++i) w.cols_x[i] = {x0[i]};
    w.rows_y = {y0};
    SquareMatrix v = similarity_to_standard(p0, w);  // (n+1)×(n+1), v² = I
    // S swaps coordinates 1 and n+1 so Diag(0_n, 1) becomes I_{n+1,1}
    SquareMatrix s = SquareMatrix::identity(ring, p.vars(), n + 1);
    MultiPoly one = MultiPoly::constant(ring, p.vars(), ring_one(ring));
    s.set(0, 0, MultiPoly(ring, p.vars()));
    s.set(n, n, MultiPoly(ring, p.vars()));
    s.set(0, n, one);
    s.set(n, 0, one);
    SquareMatrix wmat = mat_mul(s, v);
    SquareMatrix winv = mat_mul(v, s);
    // Q = W·Diag(P,0)·W⁻¹
    SquareMatrix d(ring, p.vars(), n + 1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) d.set(i, j, p.at(i, j));
    SquareMatrix q = mat_mul(mat_mul(wmat, d), winv);
    return NormalizedProjection{q, wmat, winv};
}

SquareMatrix schanuel_matrix(const RingValue& a_ambient, const RingValue& b_sub,
                             const RingValue& c_sub, const std::string& var) {
    const RingPtr& amb = a_ambient.ring;
    const RingPtr& sub = b_sub.ring;
    if (!ring_eq(sub, c_sub.ring)) throw validation_error("b and c must share one subring");
    RingValue b_amb = ring_transport(b_sub, amb);
    RingValue c_amb = ring_transport(c_sub, amb);
    if (!ring_value_eq(ring_mul(a_ambient, a_ambient), c_amb))
        throw validation_error("schanuel relation a^2 = c fails");
    if (!ring_value_eq(ring_mul(ring_mul(a_ambient, a_ambient), a_ambient), b_amb))
        throw validation_error("schanuel relation a^3 = b fails");

    std::vector<std::string> vars{var};
    auto cpoly = [&](const RingValue& v) { return MultiPoly::constant(sub, vars, v); };
    auto x = [&](unsigned e) { return MultiPoly::variable(sub, vars, 0, e); };
    RingValue b = b_sub, c = c_sub;
    RingValue c2 = ring_mul(c, c);
    RingValue bc = ring_mul(b, c);
    MultiPoly one = cpoly(ring_one(sub));
    // m11 = 1 - c²X⁴ ; m12 = cX² + bX³ ; m21 = cX² - bX³ + c²X⁴ - bcX⁵ ; m22 = c²X⁴
    MultiPoly m11 = poly_sub(one, poly_mul(cpoly(c2), x(4)));
    MultiPoly m12 = poly_add(poly_mul(cpoly(c), x(2)), poly_mul(cpoly(b), x(3)));
    MultiPoly m21 = poly_add(poly_sub(poly_mul(cpoly(c), x(2)), poly_mul(cpoly(b), x(3))),
                             poly_sub(poly_mul(cpoly(c2), x(4)), poly_mul(cpoly(bc), x(5))));
    MultiPoly m22 = poly_mul(cpoly(c2), x(4));
    SquareMatrix m(sub, vars, 2);
    m.set(0, 0, std::move(m11));
    m.set(0, 1, std::move(m12));
    m.set(1, 0, std::move(m21));
    m.set(1, 1, std::move(m22));
    if (!check_idempotent(m)) throw internal_error("schanuel matrix is not idempotent");
    return m;
}

}  // namespace semnorm
