#include "syzlab/class_verifier.hpp"

#include <string>

#include "syzlab/errors.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

BigInt mumford_coeff(long n) {
  const BigInt m(n);
  return 6 * m * m - 6 * m + 1;
}

// ---------------------------------------------------------------------------
// KClassSeries

KClassSeries::KClassSeries(std::size_t order) : rank_(order + 1), c1_(order + 1) {}

KClassSeries::KClassSeries(std::vector<BigInt> rank, std::vector<BigRational> c1)
    : rank_(std::move(rank)), c1_(std::move(c1)) {
  if (rank_.empty() || rank_.size() != c1_.size())
    throw Error("KClassSeries: rank and c1 series must have the same nonzero length");
}

KClassSeries KClassSeries::monomial(const BigInt& rank, const BigRational& c1, std::size_t degree,
                                    std::size_t order) {
  KClassSeries s(order);
  if (degree <= order) {
    s.rank_[degree] = rank;
    s.c1_[degree] = c1;
  }
  return s;
}

namespace {

std::size_t common_order(const KClassSeries& a, const KClassSeries& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

KClassSeries operator+(const KClassSeries& a, const KClassSeries& b) {
  KClassSeries s(common_order(a, b));
  for (std::size_t i = 0; i <= s.order(); ++i) {
    s.rank_[i] = a.rank_[i] + b.rank_[i];
    s.c1_[i] = a.c1_[i] + b.c1_[i];
  }
  return s;
}

KClassSeries operator-(const KClassSeries& a, const KClassSeries& b) {
  KClassSeries s(common_order(a, b));
  for (std::size_t i = 0; i <= s.order(); ++i) {
    s.rank_[i] = a.rank_[i] - b.rank_[i];
    s.c1_[i] = a.c1_[i] - b.c1_[i];
  }
  return s;
}

KClassSeries operator*(const KClassSeries& a, const KClassSeries& b) {
  KClassSeries s(common_order(a, b));
  for (std::size_t n = 0; n <= s.order(); ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      const std::size_t j = n - i;
      s.rank_[n] += a.rank_[i] * b.rank_[j];
      s.c1_[n] += a.rank_[i] * b.c1_[j];
      s.c1_[n] += b.rank_[j] * a.c1_[i];
    }
  return s;
}

// ---------------------------------------------------------------------------
// Pushforward pipeline

KClassSeries lambda_t_dual_hodge(long g, std::size_t order) {
  // rank (1+t)^g; c1 = -t (1+t)^(g-1) lambda
  std::vector<BigInt> rank(order + 1);
  std::vector<BigRational> c1(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    rank[i] = big_binom(g, static_cast<long>(i));
    if (i >= 1) c1[i] = -BigRational(big_binom(g - 1, static_cast<long>(i) - 1));
  }
  return KClassSeries(std::move(rank), std::move(c1));
}

BigInt assemble_N_firstprinciples(long k, std::size_t truncation, const PipelineVariant& variant) {
  if (k < 3) throw Error("class verification needs k >= 3");
  const long g = 2 * k - 1;
  const std::size_t T = truncation == 0 ? static_cast<std::size_t>(k + 1) : truncation;
  if (T < static_cast<std::size_t>(k))
    throw TruncationTooSmall("truncation t^" + std::to_string(T) + " is below t^" + std::to_string(k));
  if (T >= static_cast<std::size_t>(g))
    throw TruncationTooSmall("truncation must stay below t^g so that dropped terms j >= g vanish");

  std::vector<BigInt> rank(T + 1);
  std::vector<BigRational> c1(T + 1);
  for (std::size_t j = 0; j <= T; ++j) {
    const long n = 1 - static_cast<long>(j);
    // p_!O_P(1 - j): E for j = 0, trivial for j = 1, zero for 2 <= j <= g.
    BigInt rank_p = 0;
    BigRational c1_p = 0;
    if (j == 0) {
      rank_p = g;
      c1_p = 1;
    } else if (j == 1) {
      rank_p = 1;
    }
    const BigInt rank_c = BigInt(g - 1) * (2 * n - 1);
    BigRational c1_c;
    if (j <= 1)
      c1_c = variant.plus_lambda_low_slots ? 1 : -1;
    else if (variant.six_on_square)
      c1_c = BigRational(mumford_coeff(n));
    else
      c1_c = BigRational(BigInt(1 - 6 * n + n * n));
    const BigInt sign = (j % 2 == 0) ? 1 : -1;
    rank[j] = sign * (rank_p - rank_c);
    c1[j] = BigRational(sign) * (c1_p - c1_c);
  }
  const KClassSeries sum(std::move(rank), std::move(c1));
  const KClassSeries x = lambda_t_dual_hodge(g, T) * sum;
  const BigRational coeff = x.c1(static_cast<std::size_t>(k));
  if (coeff.get_den() != 1) throw NonIntegerResult("t^k coefficient of c1 is not an integer");
  return -BigInt(coeff.get_num());
}

// ---------------------------------------------------------------------------
// Printed forms

BigInt n_bracket(long k) {
  if (k < 3) throw Error("n_bracket needs k >= 3");
  // t^2 (1+t)^(2k-4) q(t), q = -t^2 + (2k-4) t - (2k-13); want t^(k-2) of (1+t)^(2k-4) q.
  const long e = 2 * k - 4;
  const long q[3] = {-(2 * k - 13), 2 * k - 4, -1};
  BigInt total = 0;
  for (long d = 0; d <= 2; ++d) total += BigInt(q[d]) * big_binom(e, k - 2 - d);
  return total;
}

BigInt n_binomial(long k) {
  if (k < 3) throw Error("n_binomial needs k >= 3");
  const long e = 2 * k - 4;
  return -big_binom(e, k - 4) + BigInt(2 * k - 4) * big_binom(e, k - 3) -
         BigInt(2 * k - 13) * big_binom(e, k - 2);
}

BigInt n_closed(long k) {
  if (k < 3) throw Error("n_closed needs k >= 3");
  const BigInt num = 6 * BigInt(k + 1) * BigInt(k - 1) * big_factorial(2 * k - 4);
  return exact_divide(num, big_factorial(k - 2) * big_factorial(k), "N closed form");
}

BigInt hm_class(long k) {
  if (k < 3) throw Error("hm_class needs k >= 3");
  const BigInt num = 6 * BigInt(k + 1) * big_factorial(2 * k - 4);
  return exact_divide(num, big_factorial(k - 2) * big_factorial(k), "k-gonal divisor class");
}

// ---------------------------------------------------------------------------
// Series identities

namespace {

// t^shift (1+t)^e p(t) through the order.
SeriesQ poly_pow(const std::vector<BigInt>& p, long e, std::size_t shift, std::size_t order) {
  return (SeriesQ::from_poly(p, order) * SeriesQ::one_plus_t_pow(e, order)).shifted(shift);
}

SeriesQ one_plus_t_inverse_pow(long e, std::size_t order) { return SeriesQ::one_plus_t_pow(-e, order); }

}  // namespace

SeriesIdentityResult check_series_identities(long g, std::size_t T) {
  SeriesIdentityResult r;
  const SeriesQ one = SeriesQ::monomial(1, 0, T);

  // identity 1
  std::vector<BigInt> minus_coeffs(T + 1), plus_coeffs(T + 1);
  for (std::size_t i = 0; i <= T; ++i) {
    const BigInt ii(static_cast<long>(i));
    const int s = i % 2 == 0 ? 1 : -1;
    minus_coeffs[i] = s * (1 - 6 * ii + 6 * ii * ii);
    plus_coeffs[i] = s * (1 + 6 * ii + 6 * ii * ii);
  }
  const SeriesQ alt_minus = SeriesQ::from_poly(minus_coeffs, T);
  const SeriesQ alt_plus = SeriesQ::from_poly(plus_coeffs, T);
  const SeriesQ pow_g = SeriesQ::one_plus_t_pow(g, T);
  const SeriesQ id1_start = pow_g * (one - alt_minus);
  const SeriesQ id1_partial = pow_g * (one - one_plus_t_inverse_pow(3, T).scaled(12) +
                                       one_plus_t_inverse_pow(2, T).scaled(24) -
                                       one_plus_t_inverse_pow(1, T).scaled(13));
  const SeriesQ id1_expanded = poly_pow({1}, g, 0, T) - poly_pow({13}, g - 1, 0, T) +
                               poly_pow({24}, g - 2, 0, T) - poly_pow({12}, g - 3, 0, T);
  const SeriesQ id1_final = poly_pow({1, -10, 1}, g - 3, 1, T);
  r.id1_ok = id1_start == id1_partial && id1_partial == id1_expanded && id1_expanded == id1_final;
  r.id1_plus_variant_holds = pow_g * (one - alt_plus) == id1_final;

  // identity 2
  std::vector<BigInt> lin_coeffs(T + 1);
  for (std::size_t i = 0; i <= T; ++i)
    lin_coeffs[i] = (i % 2 == 0 ? 1 : -1) * (1 - 2 * static_cast<long>(i));
  const SeriesQ alt_lin = SeriesQ::from_poly(lin_coeffs, T);
  const SeriesQ g_minus_t = SeriesQ::from_ints(std::vector<long>{g, -1}, T);
  const SeriesQ outer = SeriesQ::one_plus_t_pow(g - 1, T).shifted(1);
  const SeriesQ id2_start = outer * (g_minus_t - alt_lin.scaled(g - 1));
  const SeriesQ partial_fractions =
      one_plus_t_inverse_pow(1, T).scaled(3) - one_plus_t_inverse_pow(2, T).scaled(2);
  const SeriesQ id2_partial = outer * (g_minus_t - partial_fractions.scaled(g - 1));
  // (1+t)^2 (g - t) - 3(g-1)(1+t) +/- 2(g-1)
  auto inner = [&](long sign) {
    const BigInt G(g);
    std::vector<BigInt> p = {G, 2 * G - 1, G - 2, -1};  // (1+t)^2 (g - t)
    p[0] -= 3 * (G - 1);
    p[1] -= 3 * (G - 1);
    p[0] += sign * 2 * (G - 1);
    return poly_pow(p, g - 3, 1, T);
  };
  const SeriesQ id2_corrected = inner(+1);
  const SeriesQ id2_printed = inner(-1);
  const SeriesQ id2_final = poly_pow({1, 2 - BigInt(g), BigInt(g) - 2, -1}, g - 3, 1, T);
  r.id2_ok = id2_start == id2_partial && id2_partial == id2_corrected && id2_corrected == id2_final;
  r.id2_printed_sign_holds = id2_printed == id2_final;

  const SeriesQ combined = poly_pow({BigInt(g) - 12, 3 - BigInt(g), 1}, g - 3, 2, T);
  r.combined_ok = id1_final - id2_final == combined && id1_start - id2_start == combined;

  std::string note;
  if (!r.id2_printed_sign_holds)
    note += "second chain holds with +2(g-1) as the last inner term; -2(g-1) does not. ";
  if (!r.id1_plus_variant_holds)
    note += "first chain holds with (1 - 6i + 6i^2); (1 + 6i + 6i^2) does not.";
  r.sign_note = note;
  return r;
}

// ---------------------------------------------------------------------------
// Rank identity

RankIdentityResult rank_identity_values(long k) {
  if (k < 3) throw Error("rank identity needs k >= 3");
  const long g = 2 * k - 1;
  RankIdentityResult r;
  r.wedge_form = big_binom(g, k) * g - big_binom(g, k - 1);
  r.quotient_form = big_binom(g - 1, k) * (2 * k + g - 1);
  r.left = big_binom(2 * k - 2, k) * (4 * k - 2);
  r.right = big_binom(2 * k - 1, k - 1) * (2 * k - 2);
  r.ok = r.wedge_form == r.quotient_form && r.quotient_form == r.left && r.left == r.right;
  return r;
}

bool rank_identity(long k) { return rank_identity_values(k).ok; }

// ---------------------------------------------------------------------------
// Aggregate

ClassResult verify_class(long k) {
  ClassResult r;
  r.k = k;
  r.N_series = assemble_N_firstprinciples(k);
  r.N_bracket = n_bracket(k);
  r.N_binomial = n_binomial(k);
  r.N_closed = n_closed(k);
  r.HM = hm_class(k);
  r.agree_ok = r.N_series == r.N_bracket && r.N_bracket == r.N_binomial && r.N_binomial == r.N_closed;
  r.ratio_ok = r.N_closed == BigInt(k - 1) * r.HM;

  const long g = 2 * k - 1;
  // N only reads the t^k coefficient, so the identities are needed through t^(k+1).
  const SeriesIdentityResult ids = check_series_identities(g, static_cast<std::size_t>(k + 1));
  r.id1_ok = ids.id1_ok && ids.combined_ok;
  r.id2_ok = ids.id2_ok && ids.combined_ok;
  if (!ids.sign_note.empty()) r.notes.push_back(ids.sign_note);

  const RankIdentityResult rank = rank_identity_values(k);
  r.rank_ok = rank.ok;
  r.rank_value = rank.left;

  PipelineVariant minus_low;
  minus_low.plus_lambda_low_slots = false;
  const BigInt n_minus_low = assemble_N_firstprinciples(k, 0, minus_low);
  r.notes.push_back(std::string("c1 = -lambda for the j = 0, 1 pushforwards gives N = ") + to_string(n_minus_low) +
                    (n_minus_low == r.N_closed ? " (unchanged; only low-order terms move)" : " (inconsistent)"));
  PipelineVariant no_six;
  no_six.six_on_square = false;
  if (assemble_N_firstprinciples(k, 0, no_six) != r.N_closed)
    r.notes.push_back("c1 coefficient 1 - 6n + n^2 gives N = " +
                      to_string(assemble_N_firstprinciples(k, 0, no_six)) +
                      "; 6n^2 - 6n + 1 is the consistent one");
  return r;
}

std::vector<ClassResult> verify_class_range(long kmax, unsigned threads) {
  if (kmax < 3) throw Error("kmax must be at least 3");
  std::vector<ClassResult> out(static_cast<std::size_t>(kmax - 2));
  parallel_for(0, out.size(), threads, [&](std::size_t i) { out[i] = verify_class(static_cast<long>(i) + 3); }, 1);
  return out;
}

namespace {

std::string ratio_string(const BigInt& a, const BigInt& b) {
  BigRational q(a, b);
  q.canonicalize();
  return to_string(q);
}

}  // namespace

nlohmann::ordered_json to_json(const ClassResult& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["g"] = 2 * r.k - 1;
  j["N_series"] = to_string(r.N_series);
  j["N_bracket"] = to_string(r.N_bracket);
  j["N_binomial"] = to_string(r.N_binomial);
  j["N_closed"] = to_string(r.N_closed);
  j["HM"] = to_string(r.HM);
  j["ratio"] = r.HM == 0 ? std::string("undefined") : ratio_string(r.N_closed, r.HM);
  j["agree_ok"] = r.agree_ok;
  j["ratio_ok"] = r.ratio_ok;
  j["id1_ok"] = r.id1_ok;
  j["id2_ok"] = r.id2_ok;
  j["rank_ok"] = r.rank_ok;
  j["rank_value"] = to_string(r.rank_value);
  j["notes"] = r.notes;
  j["passed"] = r.all_ok();
  return j;
}

}  // namespace syzlab
