#pragma once

#include <gmpxx.h>

#include <string>

namespace syzlab {

using BigInt = mpz_class;
/// Always canonical (reduced, positive denominator) after every operation.
using BigRational = mpq_class;

/// Exact C(n, r); zero when r < 0 or r > n (including n < 0).
BigInt big_binom(long n, long r);
BigInt big_factorial(long n);

/// Exact quotient; throws NonIntegerResult if den does not divide num.
BigInt exact_divide(const BigInt& num, const BigInt& den, const std::string& what);

inline std::string to_string(const BigInt& v) { return v.get_str(); }
inline std::string to_string(const BigRational& v) { return v.get_str(); }

}  // namespace syzlab
