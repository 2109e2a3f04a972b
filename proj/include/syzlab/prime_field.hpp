#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace syzlab {

/// Canonical residue in [0, p). Always interpreted relative to a PrimeField.
using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

inline constexpr std::uint32_t kDefaultPrime = 31991;

bool is_prime(std::uint64_t n);

/// Arithmetic in GF(p) for an odd prime p < 2^31.
///
/// Every operation returns a canonical residue. Products go through a 64-bit
/// intermediate and a Barrett reduction, so `reduce` accepts any value below
/// 2^64 (in particular `a + b*c` for residues a, b, c).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::uint64_t x) const noexcept {
    const auto q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Residue>(r);
  }

  Residue from_int(std::int64_t v) const noexcept;
  /// Signed representative in (-p/2, p/2].
  std::int64_t to_signed(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  Residue add(Residue a, Residue b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  /// a + b*c
  Residue mul_add(Residue a, Residue b, Residue c) const noexcept {
    return reduce(a + static_cast<std::uint64_t>(b) * c);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Throws ZeroInverse for a == 0.
  Residue inv(Residue a) const;

  /// dst += factor * src, elementwise.
  void axpy(std::span<Residue> dst, Residue factor,
            std::span<const Residue> src) const noexcept;

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint32_t p_;
  std::uint64_t barrett_;
};

/// field_inverse: a * result == 1 (mod p).
inline Residue field_inverse(const PrimeField& field, Residue a) {
  return field.inv(a);
}

}  // namespace syzlab
