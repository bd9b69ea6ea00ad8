#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semnorm {

using Int = mpz_class;
using Rat = mpq_class;

// Library-wide error categories. The CLI maps these onto its exit codes.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : validation_error {
    using validation_error::validation_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline bool int_divisible(const Int& a, const Int& b) {
    return b != 0 && mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

inline Int int_exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Nonnegative residue in [0, m), m > 0.
inline Int int_mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool int_is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Inverse of a modulo m when gcd(a, m) = 1.
std::optional<Int> int_mod_inverse(const Int& a, const Int& m);

// Distinct prime factors by trial division; desk scale only.
std::vector<Int> prime_factors(const Int& n);

// Product of the distinct prime factors of |n|; radical(0) = 0, radical(±1) = 1.
Int int_radical(const Int& n);

// Solution of x ≡ r1 (mod m1), x ≡ r2 (mod m2) for coprime m1, m2,
// reduced modulo m1·m2.
Int int_crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

inline Rat rat_of(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string int_to_string(const Int& n);
std::string rat_to_string(const Rat& q);

}  // namespace semnorm
