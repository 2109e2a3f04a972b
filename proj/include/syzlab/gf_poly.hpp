#pragma once

#include <utility>
#include <vector>

#include "syzlab/prime_field.hpp"
#include "syzlab/rng.hpp"

namespace syzlab {

/// Dense univariate polynomial over GF(p). Coefficients are stored from the
/// constant term up with trailing zeros trimmed; the zero polynomial is empty.
class GFPoly {
 public:
  explicit GFPoly(PrimeField field) : field_(field) {}
  GFPoly(PrimeField field, Vector coeffs);

  static GFPoly constant(PrimeField field, Residue c);
  static GFPoly monomial(PrimeField field, Residue c, std::size_t degree);
  /// x - root
  static GFPoly linear(PrimeField field, Residue root);

  const PrimeField& field() const noexcept { return field_; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  Residue coeff(std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0;
  }
  Residue leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  /// Index of the lowest nonzero coefficient (t-adic valuation); -1 for zero.
  long valuation() const noexcept;

  Residue evaluate(Residue x) const noexcept;
  GFPoly monic() const;

  friend GFPoly operator+(const GFPoly& a, const GFPoly& b);
  friend GFPoly operator-(const GFPoly& a, const GFPoly& b);
  friend GFPoly operator*(const GFPoly& a, const GFPoly& b);
  GFPoly scaled(Residue c) const;
  friend bool operator==(const GFPoly& a, const GFPoly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() noexcept;

  PrimeField field_;
  Vector coeffs_;
};

/// (quotient, remainder); throws ZeroInverse if the divisor is zero.
std::pair<GFPoly, GFPoly> divmod(const GFPoly& a, const GFPoly& b);
/// Monic gcd (zero if both inputs are zero).
GFPoly gcd(const GFPoly& a, const GFPoly& b);
/// base^e mod modulus by repeated squaring.
GFPoly powmod(const GFPoly& base, std::uint64_t e, const GFPoly& modulus);

/// The distinct roots of f in GF(p), ascending. f must be nonzero.
///
/// Isolates the split part gcd(f, X^p - X) (X^p computed by repeated squaring
/// modulo f) and splits it by equal-degree splitting with random shifts
/// gcd(h, (X + a)^((p-1)/2) - 1). The default generator seed makes the
/// result path deterministic; the root set never depends on it.
std::vector<Residue> poly_roots_gfp(const GFPoly& f, std::uint64_t seed = 0x5eed);

}  // namespace syzlab
