#include "syzlab/gf_poly.hpp"

#include <algorithm>

#include "syzlab/errors.hpp"

namespace syzlab {

GFPoly::GFPoly(PrimeField field, Vector coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c %= field_.modulus();
  trim();
}

GFPoly GFPoly::constant(PrimeField field, Residue c) { return GFPoly(field, Vector{c}); }

GFPoly GFPoly::monomial(PrimeField field, Residue c, std::size_t degree) {
  Vector v(degree + 1, 0);
  v[degree] = c;
  return GFPoly(field, std::move(v));
}

GFPoly GFPoly::linear(PrimeField field, Residue root) {
  return GFPoly(field, Vector{field.neg(root % field.modulus()), 1});
}

void GFPoly::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long GFPoly::valuation() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return static_cast<long>(i);
  return -1;
}

Residue GFPoly::evaluate(Residue x) const noexcept {
  Residue acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = field_.mul_add(*it, acc, x);
  return acc;
}

GFPoly GFPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

GFPoly GFPoly::scaled(Residue c) const {
  Vector v(coeffs_);
  for (auto& x : v) x = field_.mul(x, c);
  return GFPoly(field_, std::move(v));
}

GFPoly operator+(const GFPoly& a, const GFPoly& b) {
  Vector v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.coeff(i), b.coeff(i));
  return GFPoly(a.field_, std::move(v));
}

GFPoly operator-(const GFPoly& a, const GFPoly& b) {
  Vector v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.sub(a.coeff(i), b.coeff(i));
  return GFPoly(a.field_, std::move(v));
}

GFPoly operator*(const GFPoly& a, const GFPoly& b) {
  if (a.is_zero() || b.is_zero()) return GFPoly(a.field_);
  Vector v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      v[i + j] = a.field_.mul_add(v[i + j], a.coeffs_[i], b.coeffs_[j]);
  }
  return GFPoly(a.field_, std::move(v));
}

std::pair<GFPoly, GFPoly> divmod(const GFPoly& a, const GFPoly& b) {
  const PrimeField& F = a.field();
  if (b.is_zero()) throw ZeroInverse("polynomial division by zero");
  if (a.degree() < b.degree()) return {GFPoly(F), a};
  Vector rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  Vector quot(rem.size() - db, 0);
  const Residue lead_inv = F.inv(b.leading());
  for (std::size_t i = rem.size(); i-- > db;) {
    const Residue c = F.mul(rem[i], lead_inv);
    quot[i - db] = c;
    if (c == 0) continue;
    const Residue nc = F.neg(c);
    for (std::size_t j = 0; j <= db; ++j)
      rem[i - db + j] = F.mul_add(rem[i - db + j], nc, b.coeffs()[j]);
  }
  rem.resize(db);
  return {GFPoly(F, std::move(quot)), GFPoly(F, std::move(rem))};
}

GFPoly gcd(const GFPoly& a, const GFPoly& b) {
  GFPoly x = a, y = b;
  while (!y.is_zero()) {
    GFPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

GFPoly powmod(const GFPoly& base, std::uint64_t e, const GFPoly& modulus) {
  const PrimeField& F = base.field();
  GFPoly result = divmod(GFPoly::constant(F, 1), modulus).second;
  GFPoly b = divmod(base, modulus).second;
  while (e) {
    if (e & 1) result = divmod(result * b, modulus).second;
    b = divmod(b * b, modulus).second;
    e >>= 1;
  }
  return result;
}

namespace {

// h is monic, squarefree and a product of distinct linear factors.
void split_linear(const GFPoly& h, Rng& rng, std::vector<Residue>& out) {
  const PrimeField& F = h.field();
  if (h.degree() <= 0) return;
  if (h.degree() == 1) {
    out.push_back(F.neg(h.coeff(0)));
    return;
  }
  const std::uint64_t half = (F.modulus() - 1) / 2;
  for (;;) {
    const Residue shift = rng.residue(F);
    GFPoly x_plus_a(F, Vector{shift, 1});
    GFPoly w = powmod(x_plus_a, half, h) - GFPoly::constant(F, 1);
    GFPoly d = gcd(h, w);
    if (d.degree() > 0 && d.degree() < h.degree()) {
      split_linear(d, rng, out);
      split_linear(divmod(h, d).first.monic(), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Residue> poly_roots_gfp(const GFPoly& f, std::uint64_t seed) {
  const PrimeField& F = f.field();
  if (f.is_zero()) throw Error("poly_roots_gfp: zero polynomial");
  std::vector<Residue> roots;
  if (f.degree() == 0) return roots;
  const GFPoly fm = f.monic();
  const GFPoly x = GFPoly::monomial(F, 1, 1);
  const GFPoly xp = powmod(x, F.modulus(), fm);
  GFPoly split = gcd(fm, xp - x);
  Rng rng(seed);
  split_linear(split, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace syzlab
