#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semnorm/poly.hpp"

namespace semnorm {

// Square matrix of polynomials over one coefficient ring. Constant matrices
// use an empty variable list.
class SquareMatrix {
  public:
    SquareMatrix(RingPtr coeff_ring, std::vector<std::string> vars, size_t n);
    static SquareMatrix identity(RingPtr coeff_ring, std::vector<std::string> vars, size_t n);
    // I_{n,r} = Diag(I_r, 0_{n-r}).
    static SquareMatrix standard_projection(RingPtr coeff_ring, std::vector<std::string> vars,
                                            size_t n, size_t r);
    static SquareMatrix from_entries(RingPtr coeff_ring, std::vector<std::string> vars,
                                     std::vector<std::vector<MultiPoly>> rows);

    size_t n() const { return n_; }
    const RingPtr& coeff_ring() const { return coeff_ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const MultiPoly& at(size_t i, size_t j) const { return entries_[i * n_ + j]; }
    void set(size_t i, size_t j, MultiPoly p);

  private:
    RingPtr coeff_ring_;
    std::vector<std::string> vars_;
    size_t n_;
    std::vector<MultiPoly> entries_;
};

SquareMatrix mat_add(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix mat_sub(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix mat_scalar_mul(const RingValue& c, const SquareMatrix& a);
SquareMatrix mat_transpose(const SquareMatrix& a);
bool mat_eq(const SquareMatrix& a, const SquareMatrix& b);
// Every polynomial variable evaluated at 0; entries become constants.
SquareMatrix mat_eval_at_zero(const SquareMatrix& a);
MultiPoly mat_trace(const SquareMatrix& a);
// Division-free determinant (Laplace expansion with subset memoization).
MultiPoly mat_det(const SquareMatrix& a);

bool check_idempotent(const SquareMatrix& p);

struct rank1_error : validation_error {
    using validation_error::validation_error;
};

// Trace-1 and vanishing 2x2 minors; implies idempotency for the certified
// matrix.
struct Rank1Certificate {
    SquareMatrix matrix;
    MultiPoly trace;
    size_t minors_checked = 0;
};
Rank1Certificate certify_rank1(const SquareMatrix& p);

// r(X) = det(X·P + I - P) in one fresh variable.
MultiPoly rank_polynomial(const SquareMatrix& p, const std::string& fresh_var = "X_rk");
// P has constant rank k iff rank_polynomial is X^k.
std::optional<unsigned> constant_rank(const SquareMatrix& p);

// Column f and row g with g·f = 1 and f·g = P.
struct Rank1Factorization {
    std::vector<MultiPoly> f;
    std::vector<MultiPoly> g;
};
bool verify_factorization(const SquareMatrix& p, const Rank1Factorization& fac);
// The constant unit u with fac2.f = u·fac1.f and fac1.g = u·fac2.g; requires a
// reduced coefficient ring.
RingValue unit_between(const Rank1Factorization& fac1, const Rank1Factorization& fac2);

// X (n×r) and Y (r×n) with Y·X = I_r and X·Y = P.
struct FreeImageWitness {
    std::vector<std::vector<MultiPoly>> cols_x;  // n×r
    std::vector<std::vector<MultiPoly>> rows_y;  // r×n
};
bool verify_free_image(const SquareMatrix& p, const FreeImageWitness& w);

// Newton iteration Q = 3P² - 2P³ over a dual-numbers coefficient ring,
// iterated until the defect vanishes (2^iterations >= nilpotency order).
SquareMatrix newton_lift(const SquareMatrix& p);

// M = QP + (I-Q)(I-P) conjugating P to Q when P ≡ Q modulo the nilpotents.
struct Conjugation {
    SquareMatrix m;
    SquareMatrix m_inv;
};
Conjugation lift_conjugation(const SquareMatrix& p, const SquareMatrix& q);

// The involution V = [[I-P, X],[Y, 0]] of size n+r with V² = I and
// V·Diag(P,0)·V = Diag(0_n, I_r).
SquareMatrix similarity_to_standard(const SquareMatrix& p, const FreeImageWitness& w);

// Conjugate Diag(P, 0_1) so that its value at 0 becomes I_{n+1,1}, given a
// rank-1 witness (x0 column, y0 row) of P(0). Returns the enlarged matrix Q
// with Q(0) = I_{n+1,1} and the constant conjugator W (its own inverse is
// recoverable as V·S; we return it explicitly).
struct NormalizedProjection {
    SquareMatrix q;      // (n+1)×(n+1), Q = W·Diag(P,0)·W_inv
    SquareMatrix w;      // constant conjugator
    SquareMatrix w_inv;
};
NormalizedProjection normalize_projection_at_zero(const SquareMatrix& p,
                                                  const std::vector<MultiPoly>& x0,
                                                  const std::vector<MultiPoly>& y0);

// The rank-1 idempotent M(X) = (f_i·g_j) built from b = a³, c = a² with
// f1 = 1+aX, f2 = cX² = g2, g1 = (1-aX)(1+cX²). All entries land in the
// subring generated by b and c; M(0) = I_{2,1}.
SquareMatrix schanuel_matrix(const RingValue& a_ambient, const RingValue& b_sub,
                             const RingValue& c_sub, const std::string& var = "X");

}  // namespace semnorm
