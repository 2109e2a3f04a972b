#include "syzlab/dvr.hpp"

#include <algorithm>
#include <string>

#include "syzlab/errors.hpp"
#include "syzlab/matrix.hpp"

namespace syzlab {

PolyMatrix::PolyMatrix(std::size_t n, PrimeField field, long degree_cap)
    : n_(n), field_(field), degree_cap_(degree_cap), entries_(n * n, GFPoly(field)) {}

void PolyMatrix::set(std::size_t i, std::size_t j, GFPoly value) {
  if (i >= n_ || j >= n_) throw BadIndex("PolyMatrix index out of range");
  if (value.degree() > degree_cap_)
    throw Error("PolyMatrix entry degree " + std::to_string(value.degree()) +
                " exceeds cap " + std::to_string(degree_cap_));
  entries_[i * n_ + j] = std::move(value);
}

std::vector<Residue> PolyMatrix::constant_terms() const {
  std::vector<Residue> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.coeff(0));
  return out;
}

namespace {

using Truncated = std::vector<Residue>;  // coefficients of t^0 .. t^(N-1)

long valuation(const Truncated& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) return static_cast<long>(i);
  return -1;
}

}  // namespace

DegeneracyCheck dvr_degeneracy_check(const PolyMatrix& m) {
  const PrimeField& F = m.field();
  const std::size_t n = m.size();
  DegeneracyCheck out;
  if (n == 0) {
    out.ok = true;
    return out;
  }

  const ExactMatrix at_zero = ExactMatrix::from_dense(n, n, F, m.constant_terms());
  out.corank0 = n - rank(at_zero);

  std::size_t precision = 1;
  for (std::size_t i = 0; i < n; ++i) {
    long row_deg = 0;
    for (std::size_t j = 0; j < n; ++j) row_deg = std::max(row_deg, m.at(i, j).degree());
    precision += static_cast<std::size_t>(row_deg);
  }

  std::vector<Truncated> a(n * n, Truncated(precision, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t d = 0; d < precision; ++d) a[i * n + j][d] = m.at(i, j).coeff(d);

  std::size_t total = 0;
  for (std::size_t step = 0; step < n; ++step) {
    long best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = step; i < n; ++i)
      for (std::size_t j = step; j < n; ++j) {
        const long v = valuation(a[i * n + j]);
        if (v >= 0 && (best < 0 || v < best)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) throw SingularMatrix("dvr_degeneracy_check: det M = 0");
    for (std::size_t j = 0; j < n; ++j) std::swap(a[step * n + j], a[bi * n + j]);
    for (std::size_t i = 0; i < n; ++i) std::swap(a[i * n + step], a[i * n + bj]);
    total += static_cast<std::size_t>(best);

    // pivot = t^v * u; unit_inv = u^{-1} mod t^(N - v)
    const std::size_t v = static_cast<std::size_t>(best);
    const std::size_t prec = precision - v;
    const Truncated& pivot = a[step * n + step];
    Truncated unit_inv(prec, 0);
    const Residue u0inv = F.inv(pivot[v]);
    unit_inv[0] = u0inv;
    for (std::size_t k = 1; k < prec; ++k) {
      Residue acc = 0;
      for (std::size_t i = 1; i <= k && v + i < precision; ++i)
        acc = F.mul_add(acc, pivot[v + i], unit_inv[k - i]);
      unit_inv[k] = F.neg(F.mul(acc, u0inv));
    }

    for (std::size_t i = step + 1; i < n; ++i) {
      const Truncated& e = a[i * n + step];
      if (valuation(e) < 0) continue;
      // q = (e / t^v) * unit_inv, known mod t^(N - v)
      Truncated q(prec, 0);
      for (std::size_t x = 0; x < prec; ++x) {
        if (v + x >= precision || e[v + x] == 0) continue;
        for (std::size_t y = 0; x + y < prec; ++y) q[x + y] = F.mul_add(q[x + y], e[v + x], unit_inv[y]);
      }
      // row_i -= q * row_step; row_step entries have valuation >= v.
      for (std::size_t j = step; j < n; ++j) {
        const Truncated& src = a[step * n + j];
        Truncated& dst = a[i * n + j];
        for (std::size_t x = 0; x < prec; ++x) {
          if (q[x] == 0) continue;
          const Residue nq = F.neg(q[x]);
          for (std::size_t y = v; x + y < precision; ++y)
            if (src[y]) dst[x + y] = F.mul_add(dst[x + y], nq, src[y]);
        }
      }
    }
  }
  out.detval = total;
  out.ok = out.detval >= out.corank0;
  return out;
}

PolyMatrix random_smith_instance(const std::vector<unsigned>& exponents, PrimeField field,
                                 Rng& rng) {
  const std::size_t n = exponents.size();
  auto random_invertible = [&] {
    for (;;) {
      Vector data(n * n);
      for (auto& x : data) x = rng.residue(field);
      ExactMatrix m = ExactMatrix::from_dense(n, n, field, data);
      if (rank(m) == n) return data;
    }
  };
  const Vector u = random_invertible();
  const Vector w = random_invertible();
  const long cap = exponents.empty() ? 0 : static_cast<long>(*std::max_element(exponents.begin(), exponents.end()));
  PolyMatrix out(n, field, cap);
  // (U D W)_{ij} = sum_l U_il t^{a_l} W_lj
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector coeffs(static_cast<std::size_t>(cap) + 1, 0);
      for (std::size_t l = 0; l < n; ++l)
        coeffs[exponents[l]] = field.mul_add(coeffs[exponents[l]], u[i * n + l], w[l * n + j]);
      out.set(i, j, GFPoly(field, std::move(coeffs)));
    }
  return out;
}

}  // namespace syzlab
