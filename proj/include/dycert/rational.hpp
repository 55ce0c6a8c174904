#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dycert {

// The only scalar type in core computation. Exact arbitrary-precision
// rationals, always in lowest terms with positive denominator (GMP keeps
// arithmetic results canonical; construction helpers below canonicalize).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den) {
    return make_rational(Integer(num), Integer(den));
}

// 2^e as an exact rational, e may be negative.
inline Rational pow2(long e) {
    Integer p = 1;
    if (e >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return make_rational(Integer(1), p);
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational& base, unsigned long e) {
    return make_rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

// Serialized form is always "num/den" in lowest terms, e.g. "-5/72", "2/3",
// "0/1". Parsing accepts a bare integer as well.
inline std::string rat_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("unparsable rational: " + s);
    if (r.get_den() <= 0) throw std::invalid_argument("nonpositive denominator: " + s);
    r.canonicalize();
    return r;
}

}  // namespace dycert
