#pragma once

#include <span>
#include <vector>

#include "syzlab/bigint.hpp"

namespace syzlab {

/// Power series in t over Q truncated after t^order. Binary operations on
/// operands of different order work through the smaller order.
class SeriesQ {
 public:
  explicit SeriesQ(std::size_t order) : coeffs_(order + 1) {}
  SeriesQ(std::vector<BigRational> coeffs, std::size_t order);

  static SeriesQ from_ints(std::span<const long> coeffs, std::size_t order);
  static SeriesQ from_poly(std::span<const BigInt> coeffs, std::size_t order);
  /// The monomial c * t^degree (zero if degree exceeds the order).
  static SeriesQ monomial(const BigRational& c, std::size_t degree, std::size_t order);
  /// (1 + t)^e for any integer e, exactly through the order.
  static SeriesQ one_plus_t_pow(long e, std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  /// Throws OrderOutOfRange if k > order().
  const BigRational& coeff(std::size_t k) const;
  const std::vector<BigRational>& coeffs() const noexcept { return coeffs_; }

  SeriesQ truncated(std::size_t order) const;
  /// Multiplicative inverse; throws ZeroInverse if the constant term is zero.
  SeriesQ inverse() const;
  SeriesQ scaled(const BigRational& c) const;
  /// Multiply by t^shift, dropping terms past the order.
  SeriesQ shifted(std::size_t shift) const;

  friend SeriesQ operator+(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator-(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator*(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator-(const SeriesQ& a);
  friend bool operator==(const SeriesQ& a, const SeriesQ& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<BigRational> coeffs_;
};

/// series_expand: num(t) / (1 + t)^den_exponent through t^order.
SeriesQ series_expand(std::span<const BigInt> num, long den_exponent, std::size_t order);

/// series_coeff: exact coefficient of t^k (OrderOutOfRange if k > order).
inline const BigRational& series_coeff(const SeriesQ& s, std::size_t k) { return s.coeff(k); }

}  // namespace syzlab
