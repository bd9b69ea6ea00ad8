#include "semnorm/numeric.hpp"

namespace semnorm {

std::optional<Int> int_mod_inverse(const Int& a, const Int& m) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return inv;
}

std::vector<Int> prime_factors(const Int& n) {
    Int m = abs(n);
    std::vector<Int> out;
    if (m <= 1) return out;
    for (Int p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (int_divisible(m, p)) {
            out.push_back(p);
            while (int_divisible(m, p)) m = int_exact_div(m, p);
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

Int int_radical(const Int& n) {
    if (n == 0) return 0;
    Int r = 1;
    for (const Int& p : prime_factors(n)) r *= p;
    return r;
}

Int int_crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    auto inv = int_mod_inverse(m1, m2);
    if (!inv) throw internal_error("int_crt: moduli not coprime");
    Int t = int_mod((r2 - r1) * *inv, m2);
    return int_mod(r1 + m1 * t, m1 * m2);
}

std::string int_to_string(const Int& n) { return n.get_str(); }

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace semnorm
