#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace abelim {

/// Arbitrary-precision integer used for every relation and map entry.
using Integer = mpz_class;

using IntVector = std::vector<Integer>;

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Floor division, so that a - q*b has the sign of b (or is zero).
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Quotient rounded to the nearest integer; keeps remainders small in
/// Euclidean-style reductions.
inline Integer round_div(const Integer& a, const Integer& b)
{
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer twice = 2 * abs(r);
    if (twice > abs(b))
        q += 1;
    return q;
}

inline bool divides(const Integer& d, const Integer& n)
{
    if (d == 0)
        return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    Integer g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

} // namespace abelim
