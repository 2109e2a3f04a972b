#include "syzlab/bigint.hpp"

#include "syzlab/errors.hpp"

namespace syzlab {

BigInt big_binom(long n, long r) {
  if (n < 0 || r < 0 || r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(r));
  return out;
}

BigInt big_factorial(long n) {
  if (n < 0) throw Error("factorial of a negative integer");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt exact_divide(const BigInt& num, const BigInt& den, const std::string& what) {
  if (den == 0) throw NonIntegerResult(what + ": division by zero");
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw NonIntegerResult(what + ": " + num.get_str() + " not divisible by " +
                           den.get_str());
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace syzlab
