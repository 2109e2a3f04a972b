#pragma once

#include <optional>
#include <span>
#include <vector>

#include "syzlab/gf_poly.hpp"
#include "syzlab/prime_field.hpp"

namespace syzlab {

/// A point of the affine chart {z != 0} of P^2, or {s1 != 0, t1 != 0} of
/// P^1 x P^1; (u, v) are the two affine coordinates.
struct AffinePoint {
  Residue u = 0;
  Residue v = 0;
  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// Forms of a fixed degree on P^2 or bidegree on P^1 x P^1, as coefficient
/// vectors over a monomial basis.
///
/// Monomials are stored through their dehomogenization in the standard
/// affine chart: x^i y^j z^(d-i-j) becomes u^i v^j, and
/// s0^i s1^(a-i) t0^j t1^(b-j) becomes u^i v^j. Evaluation at affine points
/// uses that fixed trivialization, so products of forms evaluate to products
/// of values.
class FormSpace {
 public:
  enum class Surface { Plane, Quadric };

  static FormSpace plane(int degree);
  static FormSpace bidegree(int a, int b);

  Surface surface() const noexcept { return surface_; }
  int degree_a() const noexcept { return a_; }
  /// Second degree for bidegree spaces; 0 for plane spaces.
  int degree_b() const noexcept { return b_; }
  /// A space with a negative degree is empty.
  std::size_t size() const noexcept { return exps_.size(); }
  std::pair<int, int> exponent(std::size_t index) const { return exps_.at(index); }
  std::optional<std::size_t> index_of(int i, int j) const;

  /// Space containing the products of forms from this space and `other`.
  FormSpace product_space(const FormSpace& other) const;
  friend bool operator==(const FormSpace& x, const FormSpace& y) {
    return x.surface_ == y.surface_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Linear functional f -> (d^du^du d^dv^dv f)(pt), as a coefficient row.
  Vector derivative_functional(const AffinePoint& pt, int du, int dv, const PrimeField& F) const;
  Residue evaluate(std::span<const Residue> coeffs, const AffinePoint& pt, const PrimeField& F) const;
  Residue derivative(std::span<const Residue> coeffs, const AffinePoint& pt, int du, int dv,
                     const PrimeField& F) const;

  /// Coefficients of f * g in product_space(other).
  Vector multiply(std::span<const Residue> f, const FormSpace& other, std::span<const Residue> g,
                  const PrimeField& F) const;

  /// The univariate polynomial v -> f(u, v).
  GFPoly restrict_u(std::span<const Residue> f, Residue u, const PrimeField& F) const;

 private:
  FormSpace(Surface surface, int a, int b);

  Surface surface_;
  int a_;
  int b_;
  std::vector<std::pair<int, int>> exps_;
  std::vector<long> lookup_;  // (i * (maxj + 1) + j) -> index or -1
  int maxi_ = 0;
  int maxj_ = 0;
};

}  // namespace syzlab
