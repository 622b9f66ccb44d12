#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace splicekit {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// representative in [0, |m|)
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const BigInt& d, const BigInt& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// inverse of a modulo m > 1; nullopt when gcd(a, m) != 1
inline std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// q mod 1, in [0,1)
inline Rational frac_part(const Rational& q) {
  BigInt fl = floor_div(q.get_num(), q.get_den());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

inline std::optional<std::int64_t> to_int64(const BigInt& a) {
  if (!a.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(a.get_si());
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace splicekit
