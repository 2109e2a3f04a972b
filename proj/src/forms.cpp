#include "syzlab/forms.hpp"

#include <algorithm>

#include "syzlab/errors.hpp"

namespace syzlab {

FormSpace::FormSpace(Surface surface, int a, int b) : surface_(surface), a_(a), b_(b) {
  if (surface == Surface::Plane) {
    if (a >= 0)
      for (int total = 0; total <= a; ++total)
        for (int i = total; i >= 0; --i) exps_.emplace_back(i, total - i);
    maxi_ = maxj_ = std::max(a, 0);
  } else {
    if (a >= 0 && b >= 0)
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) exps_.emplace_back(i, j);
    maxi_ = std::max(a, 0);
    maxj_ = std::max(b, 0);
  }
  lookup_.assign(static_cast<std::size_t>((maxi_ + 1) * (maxj_ + 1)), -1);
  for (std::size_t k = 0; k < exps_.size(); ++k)
    lookup_[static_cast<std::size_t>(exps_[k].first * (maxj_ + 1) + exps_[k].second)] = static_cast<long>(k);
}

FormSpace FormSpace::plane(int degree) { return FormSpace(Surface::Plane, degree, 0); }
FormSpace FormSpace::bidegree(int a, int b) { return FormSpace(Surface::Quadric, a, b); }

std::optional<std::size_t> FormSpace::index_of(int i, int j) const {
  if (i < 0 || j < 0 || i > maxi_ || j > maxj_) return std::nullopt;
  const long k = lookup_[static_cast<std::size_t>(i * (maxj_ + 1) + j)];
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

FormSpace FormSpace::product_space(const FormSpace& other) const {
  if (surface_ != other.surface_) throw Error("product of forms on different surfaces");
  return FormSpace(surface_, a_ + other.a_, b_ + other.b_);
}

namespace {

// d^k/dx^k x^e at x, i.e. e (e-1) ... (e-k+1) x^(e-k)
Residue falling_power(int e, int k, Residue x, const PrimeField& F) {
  if (k > e) return 0;
  Residue c = 1;
  for (int i = 0; i < k; ++i) c = F.mul(c, F.from_int(e - i));
  return F.mul(c, F.pow(x, static_cast<std::uint64_t>(e - k)));
}

}  // namespace

Vector FormSpace::derivative_functional(const AffinePoint& pt, int du, int dv,
                                        const PrimeField& F) const {
  Vector row(exps_.size());
  for (std::size_t k = 0; k < exps_.size(); ++k)
    row[k] = F.mul(falling_power(exps_[k].first, du, pt.u, F),
                   falling_power(exps_[k].second, dv, pt.v, F));
  return row;
}

Residue FormSpace::derivative(std::span<const Residue> coeffs, const AffinePoint& pt, int du,
                              int dv, const PrimeField& F) const {
  if (coeffs.size() != exps_.size()) throw BadIndex("form coefficient length mismatch");
  const Vector row = derivative_functional(pt, du, dv, F);
  Residue acc = 0;
  for (std::size_t k = 0; k < row.size(); ++k) acc = F.mul_add(acc, row[k], coeffs[k]);
  return acc;
}

Residue FormSpace::evaluate(std::span<const Residue> coeffs, const AffinePoint& pt,
                            const PrimeField& F) const {
  return derivative(coeffs, pt, 0, 0, F);
}

Vector FormSpace::multiply(std::span<const Residue> f, const FormSpace& other,
                           std::span<const Residue> g, const PrimeField& F) const {
  if (f.size() != size() || g.size() != other.size()) throw BadIndex("form coefficient length mismatch");
  const FormSpace target = product_space(other);
  Vector out(target.size(), 0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] == 0) continue;
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (g[y] == 0) continue;
      const auto idx = target.index_of(exps_[x].first + other.exps_[y].first,
                                       exps_[x].second + other.exps_[y].second);
      out[*idx] = F.mul_add(out[*idx], f[x], g[y]);
    }
  }
  return out;
}

GFPoly FormSpace::restrict_u(std::span<const Residue> f, Residue u, const PrimeField& F) const {
  if (f.size() != size()) throw BadIndex("form coefficient length mismatch");
  Vector coeffs(static_cast<std::size_t>(maxj_) + 1, 0);
  for (std::size_t k = 0; k < exps_.size(); ++k) {
    if (f[k] == 0) continue;
    const auto [i, j] = exps_[k];
    coeffs[static_cast<std::size_t>(j)] =
        F.mul_add(coeffs[static_cast<std::size_t>(j)], f[k], F.pow(u, static_cast<std::uint64_t>(i)));
  }
  return GFPoly(F, std::move(coeffs));
}

}  // namespace syzlab
