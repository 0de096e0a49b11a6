#pragma once

// Exact integer/rational helpers on top of GMP.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace edgestat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for malformed inputs and violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an exact enumeration would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// C(n, k) as an unbounded integer; zero when k < 0 or k > n.
Integer binomial(std::int64_t n, std::int64_t k);

/// C(n, k) as uint64; throws if it does not fit.
std::uint64_t binomial_u64(std::int64_t n, std::int64_t k);

/// n (n-1) ... (n-m+1); zero when m > n >= 0.
Integer falling_factorial(std::int64_t n, std::int64_t m);

Integer pow_int(const Integer& base, unsigned long exponent);
Rational pow_rat(const Rational& base, unsigned long exponent);

/// "num/den" in lowest terms (den is always printed, "0/1" for zero).
std::string to_fraction_string(const Rational& q);

/// Accepts "num", "num/den" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace edgestat
