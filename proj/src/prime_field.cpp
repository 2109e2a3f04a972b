#include "syzlab/prime_field.hpp"

#include <limits>
#include <string>

#include "syzlab/errors.hpp"

namespace syzlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p))
    throw Error("PrimeField: modulus must be an odd prime below 2^31, got " +
                std::to_string(p));
  barrett_ = std::numeric_limits<std::uint64_t>::max() / p;
}

Residue PrimeField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Residue>(r);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1;
  Residue base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw ZeroInverse("inverse of zero in GF(" + std::to_string(p_) + ")");
  // extended Euclid on signed 64-bit
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Residue>(t);
}

void PrimeField::axpy(std::span<Residue> dst, Residue factor,
                      std::span<const Residue> src) const noexcept {
  const std::size_t n = dst.size();
  Residue* d = dst.data();
  const Residue* s = src.data();
  for (std::size_t j = 0; j < n; ++j)
    d[j] = reduce(d[j] + static_cast<std::uint64_t>(factor) * s[j]);
}

}  // namespace syzlab
