#include "syzlab/series.hpp"

#include <algorithm>
#include <string>

#include "syzlab/errors.hpp"

namespace syzlab {

SeriesQ::SeriesQ(std::vector<BigRational> coeffs, std::size_t order)
    : coeffs_(std::move(coeffs)) {
  coeffs_.resize(order + 1);
}

SeriesQ SeriesQ::from_ints(std::span<const long> coeffs, std::size_t order) {
  SeriesQ s(order);
  for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) s.coeffs_[i] = coeffs[i];
  return s;
}

SeriesQ SeriesQ::from_poly(std::span<const BigInt> coeffs, std::size_t order) {
  SeriesQ s(order);
  for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i)
    s.coeffs_[i] = BigRational(coeffs[i]);
  return s;
}

SeriesQ SeriesQ::monomial(const BigRational& c, std::size_t degree, std::size_t order) {
  SeriesQ s(order);
  if (degree <= order) s.coeffs_[degree] = c;
  return s;
}

SeriesQ SeriesQ::one_plus_t_pow(long e, std::size_t order) {
  // C(e, i) = e (e-1) ... (e-i+1) / i!, an integer for every integer e
  SeriesQ s(order);
  BigInt c = 1;
  for (std::size_t i = 0; i <= order; ++i) {
    s.coeffs_[i] = c;
    c *= e - static_cast<long>(i);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i + 1));
  }
  return s;
}

const BigRational& SeriesQ::coeff(std::size_t k) const {
  if (k > order())
    throw OrderOutOfRange("coefficient t^" + std::to_string(k) +
                          " beyond truncation order " + std::to_string(order()));
  return coeffs_[k];
}

SeriesQ SeriesQ::truncated(std::size_t order) const {
  SeriesQ s(order);
  for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.coeffs_[i] = coeffs_[i];
  return s;
}

SeriesQ SeriesQ::inverse() const {
  if (coeffs_[0] == 0) throw ZeroInverse("series inverse: zero constant term");
  SeriesQ r(order());
  const BigRational inv0 = 1 / coeffs_[0];
  r.coeffs_[0] = inv0;
  for (std::size_t n = 1; n <= order(); ++n) {
    BigRational acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += coeffs_[i] * r.coeffs_[n - i];
    r.coeffs_[n] = -acc * inv0;
  }
  return r;
}

SeriesQ SeriesQ::scaled(const BigRational& c) const {
  SeriesQ s(*this);
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

SeriesQ SeriesQ::shifted(std::size_t shift) const {
  SeriesQ s(order());
  for (std::size_t i = 0; i + shift <= order(); ++i) s.coeffs_[i + shift] = coeffs_[i];
  return s;
}

SeriesQ operator+(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ s(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= s.order(); ++i) s.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return s;
}

SeriesQ operator-(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ s(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= s.order(); ++i) s.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
  return s;
}

SeriesQ operator-(const SeriesQ& a) {
  SeriesQ s(a);
  for (auto& x : s.coeffs_) x = -x;
  return s;
}

SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ s(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= s.order(); ++j)
      s.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return s;
}

SeriesQ series_expand(std::span<const BigInt> num, long den_exponent, std::size_t order) {
  return SeriesQ::from_poly(num, order) * SeriesQ::one_plus_t_pow(-den_exponent, order);
}

}  // namespace syzlab
